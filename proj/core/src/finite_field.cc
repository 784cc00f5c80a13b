#include "graphonreg/finite_field.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

#include "graphonreg/error.h"

namespace graphonreg {
namespace {

using Poly = std::vector<std::int64_t>;

std::int64_t Mod(std::int64_t x, std::int64_t p) {
  const std::int64_t r = x % p;
  return r < 0 ? r + p : r;
}

std::int64_t InvMod(std::int64_t a, std::int64_t p) {
  // Extended Euclid on (a, p), p prime.
  std::int64_t t = 0, new_t = 1, r = p, new_r = Mod(a, p);
  while (new_r != 0) {
    const std::int64_t quotient = r / new_r;
    t = std::exchange(new_t, t - quotient * new_t);
    r = std::exchange(new_r, r - quotient * new_r);
  }
  return Mod(t, p);
}

void Trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a nonzero polynomial m.
Poly PolyRem(Poly a, const Poly& m, std::int64_t p) {
  Trim(a);
  const std::size_t dm = m.size() - 1;
  const std::int64_t lead_inv = InvMod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::int64_t factor = Mod(a.back() * lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = Mod(a[shift + i] - factor * m[i], p);
    Trim(a);
  }
  return a;
}

Poly PolyMulMod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = Mod(prod[i + j] + a[i] * b[j], p);
  }
  return PolyRem(std::move(prod), m, p);
}

Poly PolyPowMod(Poly base, std::uint64_t e, const Poly& m, std::int64_t p) {
  Poly result{1};
  base = PolyRem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1u) result = PolyMulMod(result, base, m, p);
    base = PolyMulMod(base, base, m, p);
    e >>= 1u;
  }
  return PolyRem(std::move(result), m, p);
}

Poly PolyGcd(Poly a, Poly b, std::int64_t p) {
  Trim(a);
  Trim(b);
  while (!b.empty()) {
    Poly r = PolyRem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::int64_t> PrimeFactors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^j) mod f.
Poly FrobeniusPower(const Poly& f, std::int64_t p, int j) {
  Poly h{0, 1};
  for (int i = 0; i < j; ++i) h = PolyPowMod(h, static_cast<std::uint64_t>(p), f, p);
  return h;
}

// Rabin's test: f of degree k is irreducible iff x^(p^k) = x mod f and
// gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
bool IsIrreducible(const Poly& f, std::int64_t p, int k) {
  Poly h = FrobeniusPower(f, p, k);
  h.resize(std::max<std::size_t>(h.size(), 2), 0);
  h[1] = Mod(h[1] - 1, p);
  if (!PolyRem(std::move(h), f, p).empty()) return false;
  for (std::int64_t r : PrimeFactors(k)) {
    Poly g = FrobeniusPower(f, p, k / static_cast<int>(r));
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = Mod(g[1] - 1, p);
    Poly d = PolyGcd(g, f, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool IsPrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t PrimePower::q() const {
  std::int64_t out = 1;
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

PrimePower ToPrimePower(std::int64_t q) {
  if (q < 2) throw ValidationError(std::to_string(q) + " is not a prime power");
  const std::vector<std::int64_t> factors = PrimeFactors(q);
  if (factors.size() != 1) throw ValidationError(std::to_string(q) + " is not a prime power");
  PrimePower out{factors.front(), 0};
  for (std::int64_t x = q; x > 1; x /= out.p) ++out.k;
  return out;
}

PrimePower ParseFieldSpec(std::string_view spec) {
  auto parse = [&](std::string_view text) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw ValidationError("malformed field specification '" + std::string(spec) + "'");
    }
    return v;
  };
  const auto caret = spec.find('^');
  if (caret == std::string_view::npos) return ToPrimePower(parse(spec));
  const std::int64_t p = parse(spec.substr(0, caret));
  const std::int64_t k = parse(spec.substr(caret + 1));
  if (!IsPrime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  if (k < 1 || k > 62) throw ValidationError("field degree must be a positive integer");
  return {p, static_cast<int>(k)};
}

FiniteField::FiniteField(std::int64_t p, int k) : p_(p), k_(k), q_(1) {
  if (!IsPrime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  if (k < 1) throw ValidationError("field degree must be at least 1");
  if (k > kMaxFieldDegree) throw BudgetError("field degree above " + std::to_string(kMaxFieldDegree));
  for (int i = 0; i < k; ++i) {
    q_ *= p;
    if (q_ > kMaxFieldOrder) {
      throw BudgetError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds " + std::to_string(kMaxFieldOrder));
    }
  }

  for (std::int64_t n = 0; n < q_; ++n) {
    Poly candidate = coefficients(static_cast<Element>(n));
    candidate.push_back(1);
    if (IsIrreducible(candidate, p_, k_)) {
      modulus_ = std::move(candidate);
      break;
    }
  }

  const std::vector<std::int64_t> factors = PrimeFactors(q_ - 1);
  for (std::int64_t g = 1; g < q_; ++g) {
    const Poly gp = coefficients(static_cast<Element>(g));
    const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::int64_t r) {
      const Poly h = PolyPowMod(gp, static_cast<std::uint64_t>((q_ - 1) / r), modulus_, p_);
      return !(h.size() == 1 && h[0] == 1);
    });
    if (primitive) {
      generator_ = static_cast<Element>(g);
      break;
    }
  }

  exp_.resize(static_cast<std::size_t>(q_ - 1));
  log_.assign(static_cast<std::size_t>(q_), 0);
  Poly power{1};
  const Poly gp = coefficients(generator_);
  for (std::int64_t i = 0; i < q_ - 1; ++i) {
    const Element e = from_coefficients(power);
    exp_[static_cast<std::size_t>(i)] = e;
    log_[e] = static_cast<std::uint32_t>(i);
    power = PolyMulMod(power, gp, modulus_, p_);
  }
}

FiniteField FiniteField::FromOrder(std::int64_t q) {
  const PrimePower pp = ToPrimePower(q);
  return FiniteField(pp.p, pp.k);
}

std::vector<std::int64_t> FiniteField::coefficients(Element x) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(k_));
  std::int64_t v = x;
  for (int i = 0; i < k_; ++i) {
    c[static_cast<std::size_t>(i)] = v % p_;
    v /= p_;
  }
  return c;
}

FiniteField::Element FiniteField::from_coefficients(const std::vector<std::int64_t>& c) const {
  std::int64_t v = 0;
  for (int i = std::min<int>(k_, static_cast<int>(c.size())) - 1; i >= 0; --i) {
    v = v * p_ + Mod(c[static_cast<std::size_t>(i)], p_);
  }
  return static_cast<Element>(v);
}

FiniteField::Element FiniteField::add(Element x, Element y) const {
  if (k_ == 1) return static_cast<Element>((x + y) % p_);
  std::int64_t a = x, b = y, out = 0, place = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return static_cast<Element>(out);
}

FiniteField::Element FiniteField::neg(Element x) const {
  if (k_ == 1) return static_cast<Element>((p_ - x) % p_);
  std::int64_t a = x, out = 0, place = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return static_cast<Element>(out);
}

FiniteField::Element FiniteField::sub(Element x, Element y) const { return add(x, neg(y)); }

FiniteField::Element FiniteField::mul(Element x, Element y) const {
  if (x == 0 || y == 0) return 0;
  const std::uint64_t e = (static_cast<std::uint64_t>(log_[x]) + log_[y]) % static_cast<std::uint64_t>(q_ - 1);
  return exp_[e];
}

FiniteField::Element FiniteField::inv(Element x) const {
  if (x == 0) throw ValidationError("inverse of zero");
  const auto order = static_cast<std::uint64_t>(q_ - 1);
  return exp_[(order - log_[x]) % order];
}

FiniteField::Element FiniteField::pow(Element x, std::uint64_t e) const {
  if (e == 0) return 1;
  if (x == 0) return 0;
  const auto order = static_cast<std::uint64_t>(q_ - 1);
  return exp_[(static_cast<std::uint64_t>(log_[x]) * (e % order)) % order];
}

std::string FiniteField::name() const { return std::to_string(p_) + "^" + std::to_string(k_); }

namespace {

std::vector<bool> PowerMask(const FiniteField& f, std::uint64_t e) {
  std::vector<bool> mask(static_cast<std::size_t>(f.order()), false);
  for (std::int64_t z = 0; z < f.order(); ++z) mask[f.pow(static_cast<FiniteField::Element>(z), e)] = true;
  return mask;
}

std::vector<FiniteField::Element> MaskToSet(const std::vector<bool>& mask) {
  std::vector<FiniteField::Element> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<FiniteField::Element>(i));
  }
  return out;
}

}  // namespace

std::vector<bool> SquareMask(const FiniteField& f) { return PowerMask(f, 2); }
std::vector<bool> CubeMask(const FiniteField& f) { return PowerMask(f, 3); }
std::vector<FiniteField::Element> Squares(const FiniteField& f) { return MaskToSet(SquareMask(f)); }
std::vector<FiniteField::Element> Cubes(const FiniteField& f) { return MaskToSet(CubeMask(f)); }

CyclicFrobenius::CyclicFrobenius(std::int64_t q) : q_(q), n_(2 * q + 1) {
  if (q > kMaxFieldOrder) throw BudgetError("q above " + std::to_string(kMaxFieldOrder));
  ToPrimePower(q);
}

CyclicFrobenius::Element CyclicFrobenius::pow(Element a, std::int64_t e) const {
  return Mod(Mod(a, n_) * Mod(e, n_), n_);
}

CyclicFrobenius::Element CyclicFrobenius::sigma(Element a) const { return (a * (q_ % n_)) % n_; }

bool CyclicFrobenius::is_cube(Element a) const {
  return a % std::gcd<std::int64_t, std::int64_t>(3, n_) == 0;
}

CyclicFrobenius::Element CyclicFrobenius::primitive_cube_root() const {
  if (!has_primitive_cube_root()) throw ValidationError("mu_{2q+1} has no primitive cube root of unity");
  return n_ / 3;
}

std::int64_t MultiplicativeOrder(std::int64_t a, std::int64_t n) {
  if (std::gcd(a, n) != 1) throw ValidationError("multiplicative order needs gcd(a, n) = 1");
  if (n > 3'000'000'000LL) throw BudgetError("multiplicative order needs n <= 3e9");
  const std::int64_t base = Mod(a, n);
  std::int64_t x = base;
  std::int64_t order = 1;
  while (x != 1 % n) {
    x = x * base % n;
    ++order;
  }
  return order;
}

}  // namespace graphonreg
