#pragma once

// Dense univariate polynomials over F_q. A Poly is a plain value; arithmetic
// goes through a PolyRing, which carries the field context.

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dp5/gf.hpp"

namespace dp5 {

using gf::Elem;
using gf::FieldCtx;

class Poly {
 public:
  Poly() = default;
  /// Coefficients low to high; trailing zeros are dropped.
  explicit Poly(std::vector<Elem> coeffs);

  static Poly constant(Elem c) { return Poly(std::vector<Elem>{c}); }
  static Poly monomial(Elem c, int k);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Elem coeff(int i) const noexcept {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
  }
  Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }

  bool operator==(const Poly&) const = default;
  /// Orders by degree, then by coefficients from low to high.
  std::strong_ordering operator<=>(const Poly& other) const;

 private:
  std::vector<Elem> c_;
};

class PolyRing {
 public:
  explicit PolyRing(FieldCtx f) : f_(std::move(f)) {}

  const FieldCtx& field() const noexcept { return f_; }

  Poly x() const { return Poly::monomial(1, 1); }
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly scale(const Poly& a, Elem s) const;
  Poly mul(const Poly& a, const Poly& b) const;
  /// Quotient and remainder; throws DivisionByZero for b == 0.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly monic(const Poly& a) const;
  /// Monic gcd; gcd(0, 0) == 0.
  Poly gcd(const Poly& a, const Poly& b) const;
  bool divides(const Poly& d, const Poly& a) const { return mod(a, d).is_zero(); }
  Poly powmod(const Poly& base, const mpz_class& exponent, const Poly& m) const;
  Elem eval(const Poly& a, Elem x) const;
  bool is_irreducible(const Poly& a) const;

  /// Monic irreducible factors with multiplicities, sorted by Poly ordering.
  /// Distinct-degree splitting followed by equal-degree splitting.
  std::vector<std::pair<Poly, int>> factor(const Poly& a) const;

 private:
  std::vector<Poly> split_equal_degree(const Poly& g, int k, std::uint64_t& seed) const;

  FieldCtx f_;
};

}  // namespace dp5
