#pragma once

// Truncated power series in u = 1/L with integer coefficients, and the motivic
// objects of the projective line expressed in them. A closed point of degree n
// contributes u^n, so specializing u = 1/q turns Euler products over closed
// points into the corresponding point-count products.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dp5::motivic {

inline constexpr int kDefaultTruncation = 40;

class SeriesL {
 public:
  /// The zero series modulo u^trunc.
  explicit SeriesL(int trunc);
  /// Coefficients of u^0.. ; extra terms are dropped, missing ones are zero.
  SeriesL(int trunc, std::vector<mpz_class> coeffs);
  static SeriesL one(int trunc);
  /// 1 - u^k.
  static SeriesL one_minus_power(int trunc, int k);

  int trunc() const noexcept { return static_cast<int>(c_.size()); }
  const mpz_class& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<mpz_class>& coeffs() const noexcept { return c_; }

  SeriesL operator+(const SeriesL& o) const;
  SeriesL operator-(const SeriesL& o) const;
  SeriesL operator*(const SeriesL& o) const;
  bool operator==(const SeriesL&) const = default;

  /// Throws NonUnit unless the constant term is +-1.
  SeriesL inverse() const;
  /// Negative exponents require a unit.
  SeriesL pow(const mpz_class& e) const;
  /// u -> u^k.
  SeriesL substitute(int k) const;
  /// Multiplication by L, defined when the constant term vanishes; the result
  /// is known modulo u^(trunc-1).
  SeriesL times_L() const;

  /// sum c_i x^i as an exact rational.
  mpq_class specialize(const mpq_class& x) const;

  /// "c0 + c1*u + ..." with zero terms omitted.
  std::string to_string() const;

 private:
  std::vector<mpz_class> c_;
};

/// (1 - u^k)(1 - u^(k-1)): the product of (1 - L_v^-k) over closed points of
/// P^1. Throws DegenerateK for k < 2.
SeriesL kapranov_inverse_at(int k, int trunc);

/// Coefficients of the inverse Kapranov zeta of P^1 as polynomials in L
/// (low to high): 1, -(1 + L), L.
std::vector<std::vector<std::int64_t>> mobius_motivic_p1();

/// [Div^d(P^1)] = 1 + L + ... + L^d evaluated at L = q.
mpz_class divisor_class_at(int d, std::int64_t q);

/// Integer exponents e_1..e_K (index 0 unused) with
/// prod_k (1 - x^k)^e_k = F(x) mod x^(K+1). Requires F(0) = 1.
std::vector<mpz_class> witt_exponents(const std::vector<mpz_class>& f, int K);

/// Coefficients of the local factor (1 - x)^5 (1 + 5x + x^2).
std::vector<mpz_class> local_factor_coefficients();

/// (1 - u)^-5 * prod_{k >= 2} kapranov_inverse_at(k)^e_k modulo u^trunc.
SeriesL motivic_constant(int trunc = kDefaultTruncation);

struct IdentityCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<IdentityCheck> local_identity_checks(std::uint64_t seed = 1);

/// Integer polynomial helpers used by the identity checks.
using IntPoly = std::vector<std::int64_t>;
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_trim(IntPoly a);

/// sum over eps in {0,1}^4 of (-1)^|eps| x^(max(e1,e2,e3) + max(e1,e2,e4) + max(min(e1,e2),e3,e4)).
IntPoly pattern_sum_generic();
/// Same sum with only eps_i free (the point divides a_i), i in 1..4.
IntPoly pattern_sum_dividing(int i);

}  // namespace dp5::motivic
