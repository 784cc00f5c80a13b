#include "graphonreg/expander.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "graphonreg/error.h"
#include "graphonreg/finite_field.h"

namespace graphonreg {
namespace {

// Distinct quadruples counted with std::set over every (x, x', y, y').
double QuadrupleOracle(const Morphism& f, bool swap_x, bool swap_y) {
  const std::int64_t n = f.domain_size();
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> image;
  for (std::int64_t x = 0; x < n; ++x) {
    for (std::int64_t xp = 0; xp < n; ++xp) {
      const std::int64_t a = swap_x ? xp : x;
      const std::int64_t ap = swap_x ? x : xp;
      for (std::int64_t y = 0; y < n; ++y) {
        for (std::int64_t yp = 0; yp < n; ++yp) {
          const std::int64_t b = swap_y ? yp : y;
          const std::int64_t bp = swap_y ? y : yp;
          image.emplace(f(a, b), f(a, bp), f(ap, b), f(ap, bp));
        }
      }
    }
  }
  return static_cast<double>(image.size()) / std::pow(static_cast<double>(n), 4);
}

TEST(Morphism, TagsAndEvaluation) {
  for (MorphismId id : AllMorphisms()) EXPECT_EQ(ParseMorphism(MorphismTag(id)), id);
  EXPECT_THROW(ParseMorphism("sub"), ValidationError);
  EXPECT_TRUE(IsGroupLaw(MorphismId::kMulTwist));
  EXPECT_FALSE(IsGroupLaw(MorphismId::kAddSquareCube));

  const Morphism add(MorphismId::kAdd, 7);
  EXPECT_EQ(add(5, 4), 2);
  const Morphism mul(MorphismId::kMul, 7);
  EXPECT_EQ(mul(5, 4), 6);
  const Morphism sc(MorphismId::kAddSquareCube, 7);
  EXPECT_EQ(sc(3, 2), (9 + 8) % 7);
  // Exponents: a + q b mod 2q + 1.
  const Morphism twist(MorphismId::kMulTwist, 4);
  EXPECT_EQ(twist.domain_size(), 9);
  EXPECT_EQ(twist(1, 2), (1 + 4 * 2) % 9);
  EXPECT_THROW(Morphism(MorphismId::kAdd, 10), ValidationError);
}

TEST(QuadrupleImageRatio, Examples) {
  EXPECT_NEAR(QuadrupleImageRatio(Morphism(MorphismId::kAdd, 7)), 1.0 / 7.0, 1e-15);
  EXPECT_LE(QuadrupleImageRatio(Morphism(MorphismId::kMul, 7)), 2.0 / 7.0);
  // Only three cube values in F_7 limit the differences y^3 - y'^3.
  EXPECT_NEAR(QuadrupleImageRatio(Morphism(MorphismId::kAddSquareCube, 7)), 125.0 / 2401.0, 1e-15);
  EXPECT_THROW(QuadrupleImageRatio(Morphism(MorphismId::kAdd, 101)), BudgetError);
}

TEST(QuadrupleImageRatioProperty, MatchesSetOracleAndRelabeling) {
  for (MorphismId id : AllMorphisms()) {
    for (std::int64_t q : {2, 3, 4, 5, 7}) {
      const Morphism f(id, q);
      const double ratio = QuadrupleImageRatio(f);
      EXPECT_NEAR(ratio, QuadrupleOracle(f, false, false), 1e-15);
      EXPECT_NEAR(ratio, QuadrupleOracle(f, true, false), 1e-15);
      EXPECT_NEAR(ratio, QuadrupleOracle(f, false, true), 1e-15);
      EXPECT_GT(ratio, 0.0);
      EXPECT_LE(ratio, 1.0);
    }
  }
}

// The additive image fills the hyperplane f1 + f4 = f2 + f3.
TEST(QuadrupleImageRatioProperty, AddFillsConstraintSurface) {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    EXPECT_NEAR(QuadrupleImageRatio(Morphism(MorphismId::kAdd, q)) * static_cast<double>(q), 1.0, 1e-12);
  }
}

// x^2 + y^3 is a sum g(x) + h(y), so its quadruples also satisfy
// f1 + f4 = f2 + f3; the image is the whole hyperplane when squaring or
// cubing is onto differences, and the ratio is then exactly 1/q.
TEST(QuadrupleImageRatioProperty, SeparableSumLiesOnHyperplane) {
  for (std::int64_t q : {5, 7, 11, 13}) {
    const Morphism f(MorphismId::kAddSquareCube, q);
    const FiniteField field = FiniteField::FromOrder(q);
    for (std::int64_t x = 0; x < q; x += 2) {
      for (std::int64_t xp = 0; xp < q; ++xp) {
        for (std::int64_t y = 0; y < q; ++y) {
          for (std::int64_t yp = 0; yp < q; yp += 3) {
            const auto lhs = field.add(static_cast<FiniteField::Element>(f(x, y)), static_cast<FiniteField::Element>(f(xp, yp)));
            const auto rhs = field.add(static_cast<FiniteField::Element>(f(x, yp)), static_cast<FiniteField::Element>(f(xp, y)));
            ASSERT_EQ(lhs, rhs);
          }
        }
      }
    }
    EXPECT_LE(QuadrupleImageRatio(f), 1.0 / static_cast<double>(q) + 1e-15);
  }
  EXPECT_NEAR(QuadrupleImageRatio(Morphism(MorphismId::kAddSquareCube, 11)), 1.0 / 11.0, 1e-15);
}

TEST(Syzygy, HoldsForGroupLaws) {
  for (MorphismId id : {MorphismId::kAdd, MorphismId::kMul, MorphismId::kMulTwist}) {
    for (std::int64_t q : {2, 4, 5, 7, 11, 13}) {
      const Morphism f(id, q);
      const SyzygyReport r = CheckSyzygy(f);
      EXPECT_EQ(r.violations, 0);
      EXPECT_EQ(r.tuples_checked, f.domain_size() * f.domain_size() * f.domain_size() * f.domain_size());
    }
  }
  EXPECT_THROW(CheckSyzygy(Morphism(MorphismId::kAddSquareCube, 5)), ValidationError);
}

TEST(ImageFraction, Examples) {
  const FiniteField f31(31, 1);
  std::vector<std::int64_t> mu6;
  for (int k = 0; k < 6; ++k) mu6.push_back(f31.pow(f31.generator(), static_cast<std::uint64_t>(5 * k)));
  EXPECT_NEAR(ImageFraction(Morphism(MorphismId::kMul, 31), mu6, mu6), 6.0 / 31.0, 1e-15);

  std::vector<std::int64_t> interval;
  for (std::int64_t x = 0; x < 15; ++x) interval.push_back(x);
  EXPECT_NEAR(ImageFraction(Morphism(MorphismId::kAdd, 31), interval, interval), 29.0 / 31.0, 1e-15);

  for (MorphismId id : AllMorphisms()) {
    const Morphism f(id, 7);
    std::vector<std::int64_t> all;
    for (std::int64_t x = 0; x < f.domain_size(); ++x) all.push_back(x);
    const double fraction = ImageFraction(f, all, all);
    EXPECT_GT(fraction, 0.0);
    EXPECT_LE(fraction, 1.0);
  }
}

TEST(ExpansionProbe, SubgroupsConstrainMultiplication) {
  const ExpanderReport r = ExpansionProbe(MorphismId::kMul, 31, 0.5, 1.0, 4, 1);
  EXPECT_EQ(r.min_set_size, 6);
  bool saw_mu6 = false;
  for (const ProbeResult& p : r.probes) {
    if (p.family == "subgroup:6") {
      saw_mu6 = true;
      EXPECT_NEAR(p.fraction, 6.0 / 31.0, 1e-15);
    }
  }
  EXPECT_TRUE(saw_mu6);
  EXPECT_LE(r.min_image_fraction, 6.0 / 31.0);
  EXPECT_NE(r.verdict, ExpansionVerdict::kExpanding);
}

TEST(ExpansionProbe, ReportInvariants) {
  for (MorphismId id : AllMorphisms()) {
    for (std::int64_t q : {7, 13, 32}) {
      const ExpanderReport r = ExpansionProbe(id, q, 0.5, 2.0, 3, 99);
      ASSERT_TRUE(r.quadruple_ratio.has_value() || q > 99);
      if (r.quadruple_ratio) {
        EXPECT_GT(*r.quadruple_ratio, 0.0);
        EXPECT_LE(*r.quadruple_ratio, 1.0);
      }
      double min = 1.0;
      for (const ProbeResult& p : r.probes) {
        EXPECT_GE(p.size_a, r.min_set_size);
        EXPECT_GE(p.size_b, r.min_set_size);
        min = std::min(min, p.fraction);
      }
      EXPECT_EQ(r.min_image_fraction, min);
      if (r.min_image_fraction >= 0.5) {
        EXPECT_EQ(r.verdict, ExpansionVerdict::kExpanding);
      }
      const ExpanderReport again = ExpansionProbe(id, q, 0.5, 2.0, 3, 99);
      EXPECT_EQ(again.min_image_fraction, r.min_image_fraction);
      EXPECT_EQ(again.probes.size(), r.probes.size());
    }
  }
}

TEST(ExpansionProbe, RejectsBadParameters) {
  EXPECT_THROW(ExpansionProbe(MorphismId::kAdd, 2003, 0.5, 1.0, 1, 0), ValidationError);
  EXPECT_THROW(ExpansionProbe(MorphismId::kAdd, 7, 0.5, 1.0, 0, 0), ValidationError);
  EXPECT_THROW(ExpansionProbe(MorphismId::kAdd, 7, 1.5, 1.0, 1, 0), ValidationError);
  EXPECT_THROW(ExpansionProbe(MorphismId::kAdd, 7, 0.5, 0.0, 1, 0), ValidationError);
}

}  // namespace
}  // namespace graphonreg
