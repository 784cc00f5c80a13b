#include "graphonreg/families.h"

#include <vector>

#include <gtest/gtest.h>

#include "graphonreg/error.h"
#include "graphonreg/finite_field.h"
#include "graphonreg/kernel_ops.h"
#include "graphonreg/norms.h"

namespace graphonreg {
namespace {

using E = FiniteField::Element;

TEST(Families, Tags) {
  EXPECT_EQ(AllFamilies().size(), 6u);
  for (FamilyId id : AllFamilies()) {
    EXPECT_EQ(ParseFamily(FamilyTag(id)), id);
    EXPECT_FALSE(FamilyRelation(id).empty());
  }
  EXPECT_THROW(ParseFamily("paley"), ValidationError);
  EXPECT_TRUE(IsFrobeniusFamily(FamilyId::kFrobCubes));
  EXPECT_FALSE(IsFrobeniusFamily(FamilyId::kSumCubes));
}

TEST(Generate, Examples) {
  const BipartiteGraph paley5 = Generate(FamilyId::kPaleySumSquares, 5);
  EXPECT_EQ(paley5.left_count(), 5);
  EXPECT_EQ(paley5.edge_count(), 15);
  for (int x = 0; x < 5; ++x) EXPECT_EQ(paley5.edge_weights().row(x).sum(), 3.0);

  const BipartiteGraph paley2 = Generate(FamilyId::kPaleySumSquares, 2);
  EXPECT_EQ(paley2.edge_count(), 4);

  const BipartiteGraph frob4 = Generate(FamilyId::kFrobCubes, 4);
  EXPECT_EQ(frob4.left_count(), 9);
  EXPECT_EQ(frob4.edge_count(), 27);
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) EXPECT_EQ(frob4.edge_weights()(a, b) == 1.0, (a + b) % 3 == 0);
  }
}

TEST(Generate, RejectsBadParameters) {
  EXPECT_THROW(Generate(FamilyId::kPaleySumSquares, 6), ValidationError);
  EXPECT_THROW(Generate(FamilyId::kSumCubes, 1), ValidationError);
  EXPECT_THROW(Generate(FamilyId::kProdCubes, 2048), BudgetError);
  EXPECT_THROW(Generate(FamilyId::kFrobCubes, 2003), BudgetError);
}

TEST(GenerateProperty, SumCubesDensityMatchesCubeCount) {
  for (std::int64_t q : {4, 5, 7, 8, 9, 11, 13, 16, 19, 25, 27, 31}) {
    const BipartiteGraph g = Generate(FamilyId::kSumCubes, q);
    const auto cubes = Cubes(FiniteField::FromOrder(q));
    for (int x = 0; x < q; ++x) {
      EXPECT_EQ(g.edge_weights().row(x).sum(), static_cast<double>(cubes.size())) << "q=" << q;
    }
    EXPECT_EQ(g.edge_count(), static_cast<long>(q * static_cast<std::int64_t>(cubes.size())));
  }
}

TEST(GenerateProperty, ProdSquaresIsQuadraticResidueBlocks) {
  for (std::int64_t q : {5, 7, 9, 11, 13, 25, 27}) {
    const FiniteField f = FiniteField::FromOrder(q);
    const std::vector<bool> qr = SquareMask(f);
    const BipartiteGraph g = Generate(FamilyId::kProdSquares, q);
    for (E x = 1; x < q; ++x) {
      for (E y = 1; y < q; ++y) {
        EXPECT_EQ(g.edge_weights()(x, y) == 1.0, qr[x] == qr[y]) << "q=" << q;
      }
    }
    // Products with 0 give 0, which is a square.
    for (E y = 0; y < q; ++y) EXPECT_EQ(g.edge_weights()(0, y), 1.0);
  }
}

TEST(GenerateProperty, FrobCubesShiftInvariant) {
  for (std::int64_t q : {2, 4, 5, 7, 8, 13}) {
    const BipartiteGraph g = Generate(FamilyId::kFrobCubes, q);
    const int n = g.left_count();
    ASSERT_EQ(n, 2 * q + 1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        EXPECT_EQ(g.edge_weights()(a, b), g.edge_weights()((a + 3) % n, (b + 3) % n));
      }
    }
  }
}

TEST(GenerateProperty, TwistedMatchesExponentCongruence) {
  for (std::int64_t q : {2, 4, 7, 13}) {
    const BipartiteGraph g = Generate(FamilyId::kFrobTwistedCubes, q);
    const std::int64_t n = 2 * q + 1;
    for (std::int64_t a = 0; a < n; ++a) {
      for (std::int64_t b = 0; b < n; ++b) {
        bool edge = false;
        for (std::int64_t c = 0; c < n && !edge; ++c) edge = (a + q * b - 3 * c) % n == 0;
        EXPECT_EQ(g.edge_weights()(a, b) == 1.0, edge);
      }
    }
  }
}

TEST(ClassifyCase, Examples) {
  EXPECT_EQ(ClassifyCase(FamilyId::kSumCubes, 7).label, "3|q-1");
  EXPECT_EQ(ClassifyCase(FamilyId::kSumCubes, 5).index, 2);
  EXPECT_EQ(ClassifyCase(FamilyId::kFrobTwistedCubes, 2).index, 1);
  EXPECT_EQ(ClassifyCase(FamilyId::kFrobTwistedCubes, 4).index, 2);
  EXPECT_EQ(ClassifyCase(FamilyId::kPaleySumSquares, 8).index, 2);
}

TEST(ClassifyCase, TwistedThirdCaseNeverOccurs) {
  for (std::int64_t q = 2; q <= 1000; ++q) {
    if (!IsPrime(q)) {
      bool prime_power = true;
      try {
        ToPrimePower(q);
      } catch (const ValidationError&) {
        prime_power = false;
      }
      if (!prime_power) continue;
    }
    EXPECT_NE(ClassifyCase(FamilyId::kFrobTwistedCubes, q).index, 3) << "q=" << q;
    EXPECT_NE(ClassifyCase(FamilyId::kFrobTwistedCubes, q).index, 0) << "q=" << q;
  }
}

TEST(PredictLimit, Examples) {
  EXPECT_DOUBLE_EQ(PredictLimit(FamilyId::kPaleySumSquares, 13).representative.value(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(PredictLimit(FamilyId::kSumCubes, 11).representative.value(0, 0), 1.0);
  EXPECT_NEAR(PredictLimit(FamilyId::kSumCubes, 13).representative.value(0, 0), 1.0 / 3.0, 1e-15);

  const StepKernel cubes = PredictLimit(FamilyId::kProdCubes, 13).representative;
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 3);
  expect(0, 0) = expect(1, 2) = expect(2, 1) = 1.0;
  EXPECT_EQ(cubes.values(), expect);

  // The displayed cyclic matrix is the same stepfunction up to block
  // permutations.
  Eigen::MatrixXd cyclic(3, 3);
  cyclic << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  const Eigen::Vector3i perm(1, 2, 0);
  Eigen::MatrixXd permuted(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) permuted(i, j) = cyclic(perm(i), j);
  }
  EXPECT_NEAR(CutDistance(cubes, StepKernel::Uniform(permuted), CutDistanceMode::kExactPermutation), 0.0, 1e-12);

  const StepKernel squares = PredictLimit(FamilyId::kProdSquares, 11).representative;
  Eigen::MatrixXd anti(2, 2);
  anti << 0, 1, 1, 0;
  EXPECT_NEAR(CutDistance(squares, StepKernel::Uniform(anti), CutDistanceMode::kExactPermutation), 0.0, 1e-12);
}

TEST(PredictLimitProperty, RepresentativesAreGraphons) {
  for (FamilyId id : AllFamilies()) {
    for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 13, 16, 25}) {
      const LimitPrediction p = PredictLimit(id, q);
      EXPECT_TRUE(p.representative.is_graphon());
      EXPECT_EQ(p.case_label.index, ClassifyCase(id, q).index);
      EXPECT_FALSE(p.notes.empty());
    }
  }
}

// Block densities between the predicted classes equal the representative up
// to the O(1/q) contribution of the element 0.
TEST(PredictLimitProperty, ProdCubesClassDensities) {
  for (std::int64_t q : {7, 13, 19, 25, 31}) {
    const FiniteField f = FiniteField::FromOrder(q);
    const BipartiteGraph g = Generate(FamilyId::kProdCubes, q);
    auto coset = [&](E x) { return static_cast<int>(f.log(x) % 3); };
    Eigen::MatrixXd edges = Eigen::MatrixXd::Zero(3, 3);
    Eigen::MatrixXd sizes = Eigen::MatrixXd::Zero(3, 3);
    for (E x = 1; x < q; ++x) {
      for (E y = 1; y < q; ++y) {
        edges(coset(x), coset(y)) += g.edge_weights()(x, y);
        sizes(coset(x), coset(y)) += 1.0;
      }
    }
    const Eigen::MatrixXd density = edges.cwiseQuotient(sizes);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) EXPECT_EQ(density(i, j), (i + j) % 3 == 0 ? 1.0 : 0.0);
    }
  }
}

}  // namespace
}  // namespace graphonreg
