#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphonreg {

inline constexpr std::int64_t kMaxFieldOrder = 1'000'000;
inline constexpr int kMaxFieldDegree = 12;

bool IsPrime(std::int64_t n);

struct PrimePower {
  std::int64_t p = 0;
  int k = 0;
  std::int64_t q() const;
};

// Decomposes q = p^k with p prime and k >= 1; throws ValidationError if q is
// not a prime power.
PrimePower ToPrimePower(std::int64_t q);

// Parses "p^k" (e.g. "2^4") or a plain prime power ("16").
PrimePower ParseFieldSpec(std::string_view spec);

// The finite field F_q, q = p^k, represented as F_p[x] / (modulus).
//
// Elements are integers 0..q-1 whose base-p digits are the polynomial
// coefficients (least significant digit = constant term). The modulus is the
// least monic irreducible polynomial of degree k, ordering candidates by the
// integer whose base-p digits are their non-leading coefficients. For k = 1
// this is x, so elements are plain residues mod p.
class FiniteField {
 public:
  using Element = std::uint32_t;

  // Throws ValidationError if p is not prime or k < 1; BudgetError if
  // k > kMaxFieldDegree or p^k > kMaxFieldOrder.
  FiniteField(std::int64_t p, int k);
  static FiniteField FromOrder(std::int64_t q);

  std::int64_t characteristic() const { return p_; }
  int degree() const { return k_; }
  std::int64_t order() const { return q_; }
  // Coefficients c_0..c_k of the monic modulus.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }
  // A generator of the multiplicative group.
  Element generator() const { return generator_; }

  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element neg(Element x) const;
  Element mul(Element x, Element y) const;
  // Throws ValidationError for x = 0.
  Element inv(Element x) const;
  Element pow(Element x, std::uint64_t e) const;

  // Coefficient vector c_0..c_{k-1} of an element.
  std::vector<std::int64_t> coefficients(Element x) const;
  Element from_coefficients(const std::vector<std::int64_t>& c) const;

  // Discrete logarithm base generator(); x must be nonzero.
  std::uint32_t log(Element x) const { return log_[x]; }

  std::string name() const;

 private:
  std::int64_t p_;
  int k_;
  std::int64_t q_;
  std::vector<std::int64_t> modulus_;
  Element generator_ = 1;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

// Sorted sets {z^2 : z in F_q} and {z^3 : z in F_q}.
std::vector<FiniteField::Element> Squares(const FiniteField& f);
std::vector<FiniteField::Element> Cubes(const FiniteField& f);
// Membership masks for the same sets.
std::vector<bool> SquareMask(const FiniteField& f);
std::vector<bool> CubeMask(const FiniteField& f);

// The group mu_{2q+1} of (2q+1)-th roots of unity with the Frobenius
// x -> x^q, modeled on exponents: element a stands for g^a for a fixed
// generator g of the cyclic group, so multiplication is addition mod 2q+1
// and Frobenius is multiplication of exponents by q.
class CyclicFrobenius {
 public:
  using Element = std::int64_t;

  // Throws ValidationError unless q is a prime power; BudgetError if
  // q > kMaxFieldOrder.
  explicit CyclicFrobenius(std::int64_t q);

  std::int64_t q() const { return q_; }
  std::int64_t order() const { return n_; }
  std::int64_t frobenius_multiplier() const { return q_ % n_; }

  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return (a + b) % n_; }
  Element inv(Element a) const { return (n_ - a) % n_; }
  Element pow(Element a, std::int64_t e) const;
  Element sigma(Element a) const;

  // a is a cube (a = 3c mod n solvable) iff gcd(3, n) divides a.
  bool is_cube(Element a) const;
  // True iff 3 | n, i.e. the group contains a primitive cube root of unity.
  bool has_primitive_cube_root() const { return n_ % 3 == 0; }
  // Exponent of the primitive cube root n/3 (requires has_primitive_cube_root).
  Element primitive_cube_root() const;

 private:
  std::int64_t q_;
  std::int64_t n_;
};

// Multiplicative order of a modulo n (gcd(a, n) = 1).
std::int64_t MultiplicativeOrder(std::int64_t a, std::int64_t n);

}  // namespace graphonreg
