#include "graphonreg/families.h"

#include <array>
#include <string>

#include "graphonreg/error.h"
#include "graphonreg/finite_field.h"
#include "graphonreg/kernel_ops.h"

namespace graphonreg {
namespace {

struct FamilyInfo {
  FamilyId id;
  std::string_view tag;
  std::string_view relation;
};

constexpr std::array<FamilyInfo, 6> kFamilies{{
    {FamilyId::kPaleySumSquares, "paley_sum_squares", "exists z: x + y = z^2"},
    {FamilyId::kProdSquares, "prod_squares", "exists z: x * y = z^2"},
    {FamilyId::kSumCubes, "sum_cubes", "exists z: x + y = z^3"},
    {FamilyId::kProdCubes, "prod_cubes", "exists z: x * y = z^3"},
    {FamilyId::kFrobCubes, "frob_cubes", "exists z in U: x * y = z^3, U = {x : x sigma(x)^2 = 1}"},
    {FamilyId::kFrobTwistedCubes, "frob_twisted_cubes",
     "exists z in U: x * sigma(y) = z^3, U = {x : x sigma(x)^2 = 1}"},
}};

const FamilyInfo& Info(FamilyId id) {
  for (const FamilyInfo& f : kFamilies) {
    if (f.id == id) return f;
  }
  throw ValidationError("unknown family");
}

// 1 at (i, j) iff i + multiplier * j = 0 mod 3; the coset pattern of the
// cube-class families with classes indexed by residue mod 3.
StepKernel CosetPattern(std::int64_t multiplier) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if ((i + multiplier * j) % 3 == 0) m(i, j) = 1.0;
    }
  }
  return StepKernel::Uniform(m);
}

constexpr std::string_view kPermutationNote =
    "representative up to independent row/column block permutations; "
    "cells of measure O(1/q) omitted";

}  // namespace

const std::vector<FamilyId>& AllFamilies() {
  static const std::vector<FamilyId> all = [] {
    std::vector<FamilyId> out;
    for (const FamilyInfo& f : kFamilies) out.push_back(f.id);
    return out;
  }();
  return all;
}

std::string_view FamilyTag(FamilyId id) { return Info(id).tag; }
std::string_view FamilyRelation(FamilyId id) { return Info(id).relation; }

FamilyId ParseFamily(std::string_view tag) {
  for (const FamilyInfo& f : kFamilies) {
    if (f.tag == tag) return f.id;
  }
  throw ValidationError("unknown family '" + std::string(tag) + "'");
}

bool IsFrobeniusFamily(FamilyId id) {
  return id == FamilyId::kFrobCubes || id == FamilyId::kFrobTwistedCubes;
}

void ValidateFamilyParameter(FamilyId id, std::int64_t q) {
  ToPrimePower(q);
  if (IsFrobeniusFamily(id)) {
    if (2 * q + 1 > kMaxFamilyGroupOrder) {
      throw BudgetError("group order 2q+1 = " + std::to_string(2 * q + 1) + " exceeds " +
                        std::to_string(kMaxFamilyGroupOrder));
    }
  } else if (q > kMaxFamilyFieldOrder) {
    throw BudgetError("field order " + std::to_string(q) + " exceeds " +
                      std::to_string(kMaxFamilyFieldOrder));
  }
}

BipartiteGraph Generate(FamilyId id, std::int64_t q) {
  ValidateFamilyParameter(id, q);
  if (IsFrobeniusFamily(id)) {
    const CyclicFrobenius group(q);
    const int n = static_cast<int>(group.order());
    if (id == FamilyId::kFrobCubes) {
      return BipartiteGraph::FromPredicate(n, n, [&](int a, int b) { return group.is_cube(group.mul(a, b)); });
    }
    return BipartiteGraph::FromPredicate(
        n, n, [&](int a, int b) { return group.is_cube(group.mul(a, group.sigma(b))); });
  }

  const FiniteField field = FiniteField::FromOrder(q);
  const int n = static_cast<int>(q);
  using E = FiniteField::Element;
  switch (id) {
    case FamilyId::kPaleySumSquares: {
      const std::vector<bool> squares = SquareMask(field);
      return BipartiteGraph::FromPredicate(n, n, [&](int x, int y) {
        return squares[field.add(static_cast<E>(x), static_cast<E>(y))];
      });
    }
    case FamilyId::kProdSquares: {
      const std::vector<bool> squares = SquareMask(field);
      return BipartiteGraph::FromPredicate(n, n, [&](int x, int y) {
        return squares[field.mul(static_cast<E>(x), static_cast<E>(y))];
      });
    }
    case FamilyId::kSumCubes: {
      const std::vector<bool> cubes = CubeMask(field);
      return BipartiteGraph::FromPredicate(n, n, [&](int x, int y) {
        return cubes[field.add(static_cast<E>(x), static_cast<E>(y))];
      });
    }
    case FamilyId::kProdCubes: {
      const std::vector<bool> cubes = CubeMask(field);
      return BipartiteGraph::FromPredicate(n, n, [&](int x, int y) {
        return cubes[field.mul(static_cast<E>(x), static_cast<E>(y))];
      });
    }
    default:
      break;
  }
  throw ValidationError("unknown family");
}

CaseLabel ClassifyCase(FamilyId id, std::int64_t q) {
  const PrimePower pp = ToPrimePower(q);
  switch (id) {
    case FamilyId::kPaleySumSquares:
    case FamilyId::kProdSquares:
      return pp.p == 2 ? CaseLabel{2, "char 2"} : CaseLabel{1, "odd q"};
    case FamilyId::kSumCubes:
    case FamilyId::kProdCubes:
      return (q - 1) % 3 == 0 ? CaseLabel{1, "3|q-1"} : CaseLabel{2, "not 3|q-1"};
    case FamilyId::kFrobCubes:
      return (2 * q + 1) % 3 == 0 ? CaseLabel{1, "3|2q+1"} : CaseLabel{2, "not 3|2q+1"};
    case FamilyId::kFrobTwistedCubes: {
      const CyclicFrobenius group(q);
      if (!group.has_primitive_cube_root()) return {1, "case 1: not 3|2q+1"};
      const auto zeta = group.primitive_cube_root();
      const auto image = group.sigma(zeta);
      if (image == zeta) return {2, "case 2: 3|2q+1 and 3|q-1"};
      if (image == group.mul(zeta, zeta)) return {3, "case 3: 3|2q+1 and not 3|q-1"};
      return {0, "unreachable"};
    }
  }
  return {0, "unreachable"};
}

LimitPrediction PredictLimit(FamilyId id, std::int64_t q) {
  const CaseLabel c = ClassifyCase(id, q);
  const std::string notes(kPermutationNote);
  switch (id) {
    case FamilyId::kPaleySumSquares:
      return {c, Constant(c.index == 1 ? 0.5 : 1.0), notes};
    case FamilyId::kProdSquares:
      if (c.index == 1) return {c, StepKernel::Uniform(Eigen::MatrixXd::Identity(2, 2)), notes};
      return {c, Constant(1.0), notes};
    case FamilyId::kSumCubes:
      return {c, Constant(c.index == 1 ? 1.0 / 3.0 : 1.0), notes};
    case FamilyId::kProdCubes:
    case FamilyId::kFrobCubes:
      if (c.index == 1) return {c, CosetPattern(1), notes};
      return {c, Constant(1.0), notes};
    case FamilyId::kFrobTwistedCubes:
      // Cosets U_i = zeta^i U^3 are the exponent classes mod 3, and sigma
      // acts on them as multiplication by q mod 3.
      if (c.index == 1) return {c, Constant(1.0), notes};
      return {c, CosetPattern(q % 3), notes};
  }
  throw ValidationError("unknown family");
}

}  // namespace graphonreg
