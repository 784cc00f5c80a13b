#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphonreg/finite_field.h"

namespace graphonreg {

inline constexpr std::int64_t kMaxQuadrupleDomain = 100'000'000;  // |domain|^4
inline constexpr std::int64_t kMaxProbeOrder = 2000;

enum class MorphismId {
  kAdd,            // x + y over F_q
  kMul,            // x y over F_q
  kAddSquareCube,  // x^2 + y^3 over F_q
  kMulTwist,       // x sigma(y) on mu_{2q+1}
};

const std::vector<MorphismId>& AllMorphisms();
std::string_view MorphismTag(MorphismId id);
// Throws ValidationError for an unknown tag.
MorphismId ParseMorphism(std::string_view tag);
// True for the morphisms given by a group law (add, mul, mul_twist).
bool IsGroupLaw(MorphismId id);

// A catalog morphism instantiated at q. Domain and target elements are
// integers: field elements for the F_q morphisms, exponents 0..2q for
// mul_twist.
class Morphism {
 public:
  // Throws ValidationError unless q is a prime power.
  Morphism(MorphismId id, std::int64_t q);

  MorphismId id() const { return id_; }
  std::int64_t q() const { return q_; }
  std::int64_t domain_size() const { return domain_; }
  std::int64_t target_size() const { return domain_; }
  std::int64_t operator()(std::int64_t x, std::int64_t y) const;

  // Group law on the target and its identity; requires IsGroupLaw(id()).
  std::int64_t combine(std::int64_t a, std::int64_t b) const;

 private:
  MorphismId id_;
  std::int64_t q_;
  std::int64_t domain_;
  std::optional<FiniteField> field_;
};

// |{(f(x,y), f(x,y'), f(x',y), f(x',y'))}| / |domain|^4 by exhaustive
// enumeration. Throws BudgetError if |domain|^4 > kMaxQuadrupleDomain.
double QuadrupleImageRatio(const Morphism& f);

struct SyzygyReport {
  std::int64_t tuples_checked = 0;
  std::int64_t violations = 0;
};

// Checks f1 * f4 = f2 * f3 under the target group law on every tuple.
// Throws ValidationError for a morphism without a group law, BudgetError as
// QuadrupleImageRatio.
SyzygyReport CheckSyzygy(const Morphism& f);

// |f(A, B)| / |target|.
double ImageFraction(const Morphism& f, const std::vector<std::int64_t>& a,
                     const std::vector<std::int64_t>& b);

struct ProbeResult {
  std::string family;
  bool structured = false;
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
  double fraction = 0.0;
};

enum class ExpansionVerdict { kExpanding, kConstrained, kInconclusive };
std::string_view VerdictName(ExpansionVerdict v);

struct ExpanderReport {
  MorphismId morphism = MorphismId::kAdd;
  std::int64_t q = 0;
  // Absent when the quadruple enumeration exceeds its budget.
  std::optional<double> quadruple_ratio;
  double min_image_fraction = 1.0;
  // Minimum size ceil(C q^(1-c)) of the probed sets.
  std::int64_t min_set_size = 0;
  std::vector<std::string> probe_families;
  std::vector<ProbeResult> probes;
  ExpansionVerdict verdict = ExpansionVerdict::kInconclusive;
};

// Image fractions of f on probe sets of size >= ceil(C q^(1-c)): `trials`
// seeded random pairs, an interval {0, ..., m-1} and every multiplicative
// subgroup (of F_q^* or of mu_{2q+1}) of order >= m. The verdict is
// "expanding" if the minimum fraction is >= 1/C, "constrained" if a
// structured family falls below 1/(10 C), else "inconclusive". Random sets
// for trial t depend only on (seed, family label, t).
//
// Throws ValidationError for q > kMaxProbeOrder, trials < 1, c outside
// [0, 1] or C <= 0.
ExpanderReport ExpansionProbe(MorphismId id, std::int64_t q, double c, double big_c, int trials,
                              std::uint64_t seed);

}  // namespace graphonreg
