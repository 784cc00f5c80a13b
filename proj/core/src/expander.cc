#include "graphonreg/expander.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "graphonreg/error.h"

namespace graphonreg {
namespace {

struct MorphismInfo {
  MorphismId id;
  std::string_view tag;
};

constexpr std::array<MorphismInfo, 4> kMorphisms{{
    {MorphismId::kAdd, "add"},
    {MorphismId::kMul, "mul"},
    {MorphismId::kAddSquareCube, "add_square_cube"},
    {MorphismId::kMulTwist, "mul_twist"},
}};

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t HashLabel(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::mt19937_64 ProbeRng(std::uint64_t seed, std::string_view label, int trial) {
  const std::uint64_t h = HashLabel(label);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

std::int64_t CheckedQuadrupleSize(const Morphism& f) {
  const std::int64_t n = f.domain_size();
  if (n > 100 || n * n * n * n > kMaxQuadrupleDomain) {
    throw BudgetError("quadruple enumeration needs |domain|^4 <= " +
                      std::to_string(kMaxQuadrupleDomain) + ", domain has " + std::to_string(n) +
                      " elements");
  }
  return n;
}

// f(x, y) for all x, y, row-major.
std::vector<std::int64_t> ValueTable(const Morphism& f) {
  const std::int64_t n = f.domain_size();
  std::vector<std::int64_t> table(static_cast<std::size_t>(n * n));
  for (std::int64_t x = 0; x < n; ++x) {
    for (std::int64_t y = 0; y < n; ++y) table[x * n + y] = f(x, y);
  }
  return table;
}

// Divisors d of m with d >= lower, ascending.
std::vector<std::int64_t> DivisorsAtLeast(std::int64_t m, std::int64_t lower) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= m; ++d) {
    if (m % d == 0 && d >= lower) out.push_back(d);
  }
  return out;
}

}  // namespace

const std::vector<MorphismId>& AllMorphisms() {
  static const std::vector<MorphismId> all = [] {
    std::vector<MorphismId> out;
    for (const MorphismInfo& m : kMorphisms) out.push_back(m.id);
    return out;
  }();
  return all;
}

std::string_view MorphismTag(MorphismId id) {
  for (const MorphismInfo& m : kMorphisms) {
    if (m.id == id) return m.tag;
  }
  throw ValidationError("unknown morphism");
}

MorphismId ParseMorphism(std::string_view tag) {
  for (const MorphismInfo& m : kMorphisms) {
    if (m.tag == tag) return m.id;
  }
  throw ValidationError("unknown morphism '" + std::string(tag) + "'");
}

bool IsGroupLaw(MorphismId id) { return id != MorphismId::kAddSquareCube; }

Morphism::Morphism(MorphismId id, std::int64_t q) : id_(id), q_(q) {
  ToPrimePower(q);
  if (id == MorphismId::kMulTwist) {
    domain_ = 2 * q + 1;
  } else {
    field_.emplace(FiniteField::FromOrder(q));
    domain_ = q;
  }
}

std::int64_t Morphism::operator()(std::int64_t x, std::int64_t y) const {
  using E = FiniteField::Element;
  const auto ex = static_cast<E>(x);
  const auto ey = static_cast<E>(y);
  switch (id_) {
    case MorphismId::kAdd:
      return field_->add(ex, ey);
    case MorphismId::kMul:
      return field_->mul(ex, ey);
    case MorphismId::kAddSquareCube:
      return field_->add(field_->mul(ex, ex), field_->mul(ey, field_->mul(ey, ey)));
    case MorphismId::kMulTwist:
      return (x + (q_ % domain_) * y) % domain_;
  }
  return 0;
}

std::int64_t Morphism::combine(std::int64_t a, std::int64_t b) const {
  using E = FiniteField::Element;
  switch (id_) {
    case MorphismId::kAdd:
      return field_->add(static_cast<E>(a), static_cast<E>(b));
    case MorphismId::kMul:
      return field_->mul(static_cast<E>(a), static_cast<E>(b));
    case MorphismId::kMulTwist:
      return (a + b) % domain_;
    case MorphismId::kAddSquareCube:
      break;
  }
  throw ValidationError("morphism '" + std::string(MorphismTag(id_)) + "' has no group law");
}

double QuadrupleImageRatio(const Morphism& f) {
  const std::int64_t n = CheckedQuadrupleSize(f);
  const std::vector<std::int64_t> t = ValueTable(f);
  std::vector<bool> seen(static_cast<std::size_t>(n * n * n * n));
  std::int64_t distinct = 0;
  for (std::int64_t x = 0; x < n; ++x) {
    for (std::int64_t xp = 0; xp < n; ++xp) {
      for (std::int64_t y = 0; y < n; ++y) {
        const std::int64_t f1 = t[x * n + y];
        const std::int64_t f3 = t[xp * n + y];
        for (std::int64_t yp = 0; yp < n; ++yp) {
          const std::int64_t f2 = t[x * n + yp];
          const std::int64_t f4 = t[xp * n + yp];
          const auto code = static_cast<std::size_t>(((f1 * n + f2) * n + f3) * n + f4);
          if (!seen[code]) {
            seen[code] = true;
            ++distinct;
          }
        }
      }
    }
  }
  return static_cast<double>(distinct) / static_cast<double>(n * n * n * n);
}

SyzygyReport CheckSyzygy(const Morphism& f) {
  if (!IsGroupLaw(f.id())) {
    throw ValidationError("morphism '" + std::string(MorphismTag(f.id())) + "' has no group law");
  }
  const std::int64_t n = CheckedQuadrupleSize(f);
  const std::vector<std::int64_t> t = ValueTable(f);
  SyzygyReport out;
  for (std::int64_t x = 0; x < n; ++x) {
    for (std::int64_t xp = 0; xp < n; ++xp) {
      for (std::int64_t y = 0; y < n; ++y) {
        for (std::int64_t yp = 0; yp < n; ++yp) {
          const std::int64_t lhs = f.combine(t[x * n + y], t[xp * n + yp]);
          const std::int64_t rhs = f.combine(t[x * n + yp], t[xp * n + y]);
          ++out.tuples_checked;
          if (lhs != rhs) ++out.violations;
        }
      }
    }
  }
  return out;
}

double ImageFraction(const Morphism& f, const std::vector<std::int64_t>& a,
                     const std::vector<std::int64_t>& b) {
  const std::int64_t n = f.domain_size();
  for (const auto* set : {&a, &b}) {
    for (std::int64_t x : *set) {
      if (x < 0 || x >= n) throw ValidationError("set element outside the domain");
    }
  }
  std::vector<bool> hit(static_cast<std::size_t>(f.target_size()));
  std::int64_t count = 0;
  for (std::int64_t x : a) {
    for (std::int64_t y : b) {
      const std::int64_t z = f(x, y);
      if (!hit[z]) {
        hit[z] = true;
        ++count;
      }
    }
  }
  return static_cast<double>(count) / static_cast<double>(f.target_size());
}

std::string_view VerdictName(ExpansionVerdict v) {
  switch (v) {
    case ExpansionVerdict::kExpanding:
      return "expanding";
    case ExpansionVerdict::kConstrained:
      return "constrained";
    case ExpansionVerdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ExpanderReport ExpansionProbe(MorphismId id, std::int64_t q, double c, double big_c, int trials,
                              std::uint64_t seed) {
  if (q > kMaxProbeOrder) {
    throw ValidationError("expansion probe needs q <= " + std::to_string(kMaxProbeOrder));
  }
  if (trials < 1) throw ValidationError("trials must be positive");
  if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("c must lie in [0, 1]");
  if (!(big_c > 0.0) || !std::isfinite(big_c)) throw ValidationError("C must be positive");

  const Morphism f(id, q);
  const std::int64_t n = f.domain_size();
  ExpanderReport report;
  report.morphism = id;
  report.q = q;
  if (n <= 100 && n * n * n * n <= kMaxQuadrupleDomain) report.quadruple_ratio = QuadrupleImageRatio(f);

  const double raw = std::ceil(big_c * std::pow(static_cast<double>(q), 1.0 - c) - 1e-9);
  const std::int64_t m = std::clamp<std::int64_t>(static_cast<std::int64_t>(raw), 1, n);
  report.min_set_size = m;

  auto record = [&](std::string label, bool structured, const std::vector<std::int64_t>& a,
                    const std::vector<std::int64_t>& b) {
    ProbeResult p;
    p.family = std::move(label);
    p.structured = structured;
    p.size_a = static_cast<std::int64_t>(a.size());
    p.size_b = static_cast<std::int64_t>(b.size());
    p.fraction = ImageFraction(f, a, b);
    report.probes.push_back(p);
  };

  std::vector<std::int64_t> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng = ProbeRng(seed, "random", t);
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;
    std::sample(all.begin(), all.end(), std::back_inserter(a), m, rng);
    std::sample(all.begin(), all.end(), std::back_inserter(b), m, rng);
    record("random", false, a, b);
  }

  const std::vector<std::int64_t> interval(all.begin(), all.begin() + m);
  record("interval", true, interval, interval);

  // Multiplicative subgroups: of F_q^* through the generator's powers, or of
  // the cyclic group mu_{2q+1} as exponent multiples.
  if (id == MorphismId::kMulTwist) {
    for (std::int64_t d : DivisorsAtLeast(n, m)) {
      std::vector<std::int64_t> h;
      for (std::int64_t i = 0; i < d; ++i) h.push_back(i * (n / d));
      record("subgroup:" + std::to_string(d), true, h, h);
    }
  } else {
    const FiniteField field = FiniteField::FromOrder(q);
    for (std::int64_t d : DivisorsAtLeast(q - 1, m)) {
      const auto step = static_cast<std::uint64_t>((q - 1) / d);
      std::vector<std::int64_t> h;
      const FiniteField::Element g = field.pow(field.generator(), step);
      FiniteField::Element x = 1;
      for (std::int64_t i = 0; i < d; ++i) {
        h.push_back(x);
        x = field.mul(x, g);
      }
      std::sort(h.begin(), h.end());
      record("subgroup:" + std::to_string(d), true, h, h);
    }
  }

  report.min_image_fraction = 1.0;
  bool structured_low = false;
  for (const ProbeResult& p : report.probes) {
    report.min_image_fraction = std::min(report.min_image_fraction, p.fraction);
    if (p.structured && p.fraction < 1.0 / (10.0 * big_c)) structured_low = true;
    if (std::find(report.probe_families.begin(), report.probe_families.end(), p.family) ==
        report.probe_families.end()) {
      report.probe_families.push_back(p.family);
    }
  }
  if (report.min_image_fraction >= 1.0 / big_c) {
    report.verdict = ExpansionVerdict::kExpanding;
  } else if (structured_low) {
    report.verdict = ExpansionVerdict::kConstrained;
  } else {
    report.verdict = ExpansionVerdict::kInconclusive;
  }
  return report;
}

}  // namespace graphonreg
