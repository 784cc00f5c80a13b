#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphonreg/bipartite_graph.h"
#include "graphonreg/step_kernel.h"

namespace graphonreg {

// Catalog of definable bipartite graph families.
enum class FamilyId {
  kPaleySumSquares,    // F_q x F_q, edge iff exists z: x + y = z^2
  kProdSquares,        // F_q x F_q, edge iff exists z: x y = z^2
  kSumCubes,           // F_q x F_q, edge iff exists z: x + y = z^3
  kProdCubes,          // F_q x F_q, edge iff exists z: x y = z^3
  kFrobCubes,          // mu_{2q+1}^2, edge iff exists z in mu_{2q+1}: x y = z^3
  kFrobTwistedCubes,   // mu_{2q+1}^2, edge iff exists z in mu_{2q+1}: x sigma(y) = z^3
};

inline constexpr std::int64_t kMaxFamilyFieldOrder = 2000;
inline constexpr std::int64_t kMaxFamilyGroupOrder = 4001;

const std::vector<FamilyId>& AllFamilies();
std::string_view FamilyTag(FamilyId id);
// Throws ValidationError for an unknown tag.
FamilyId ParseFamily(std::string_view tag);
// The defining edge relation, as a formula string.
std::string_view FamilyRelation(FamilyId id);
bool IsFrobeniusFamily(FamilyId id);

// Throws ValidationError if q is not a prime power, BudgetError if the
// instance exceeds the vertex budget.
void ValidateFamilyParameter(FamilyId id, std::int64_t q);

// Graph of the family over F_q (vertices are field elements in index order)
// or over mu_{2q+1} (vertices are exponents 0..2q).
BipartiteGraph Generate(FamilyId id, std::int64_t q);

struct CaseLabel {
  // 1-based index into the family's case list; 0 for "unreachable".
  int index = 0;
  std::string label;
};

// Arithmetic case of q for the family. The twisted Frobenius family computes
// zeta^q for the primitive cube root zeta and reports case 1 (zeta not in
// the group), 2 (zeta^q = zeta) or 3 (zeta^q = zeta^2).
CaseLabel ClassifyCase(FamilyId id, std::int64_t q);

struct LimitPrediction {
  CaseLabel case_label;
  // Limit stepfunction, up to independent block permutations of rows and
  // columns; cells of measure O(1/q) are omitted.
  StepKernel representative;
  std::string notes;
};

LimitPrediction PredictLimit(FamilyId id, std::int64_t q);

}  // namespace graphonreg
