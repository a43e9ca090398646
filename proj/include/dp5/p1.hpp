#pragma once

// Sections of O(d) on the projective line as binary forms, and effective
// divisors stored fully factored.
//
// A form of degree d is f(s, t) = sum_j c_j s^j t^(d-j). Its dehomogenization
// is the polynomial sum_j c_j x^j; the point at infinity is [1:0] and its
// multiplicity in div(f) is d minus the degree of the dehomogenization.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "dp5/gf.hpp"
#include "dp5/poly.hpp"

namespace dp5::p1 {

class BinaryForm {
 public:
  /// Coefficients c_0..c_d; size must be d + 1.
  BinaryForm(FieldCtx ctx, int d, std::vector<Elem> coeffs);
  static BinaryForm zero(FieldCtx ctx, int d);
  /// Lifts a polynomial of degree <= d to a form of formal degree d.
  static BinaryForm from_poly(FieldCtx ctx, int d, const Poly& p);

  const FieldCtx& ctx() const noexcept { return ctx_; }
  int degree() const noexcept { return d_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept;
  Poly dehomogenize() const { return Poly(c_); }
  /// Multiplicity of [1:0]; undefined for the zero form.
  int infinity_order() const noexcept;

  BinaryForm operator*(const BinaryForm& other) const;
  bool operator==(const BinaryForm& other) const { return d_ == other.d_ && c_ == other.c_; }

 private:
  FieldCtx ctx_;
  int d_;
  std::vector<Elem> c_;
};

/// Either the point at infinity or a monic irreducible polynomial.
class ClosedPoint {
 public:
  static ClosedPoint infinity() { return ClosedPoint(); }
  /// The caller guarantees `p` is monic irreducible.
  static ClosedPoint finite(Poly p) { return ClosedPoint(std::move(p)); }

  bool is_infinity() const noexcept { return inf_; }
  const Poly& poly() const noexcept { return p_; }
  int degree() const noexcept { return inf_ ? 1 : p_.degree(); }

  bool operator==(const ClosedPoint&) const = default;
  /// Infinity first, then finite points in polynomial order.
  std::strong_ordering operator<=>(const ClosedPoint& other) const;

 private:
  ClosedPoint() = default;
  explicit ClosedPoint(Poly p) : inf_(false), p_(std::move(p)) {}
  bool inf_ = true;
  Poly p_;
};

class DivisorP1 {
 public:
  using Map = std::map<ClosedPoint, int>;

  DivisorP1() = default;
  /// Entries with multiplicity <= 0 are dropped.
  explicit DivisorP1(Map entries);
  static DivisorP1 point(ClosedPoint p, int mult = 1);

  const Map& entries() const noexcept { return m_; }
  bool is_zero() const noexcept { return m_.empty(); }
  int degree() const noexcept;
  int multiplicity(const ClosedPoint& p) const;
  int infinity_multiplicity() const { return multiplicity(ClosedPoint::infinity()); }
  bool is_squarefree() const noexcept;
  /// Product of P^mult over the finite part.
  Poly finite_modulus(const PolyRing& ring) const;

  DivisorP1 operator+(const DivisorP1& other) const;
  /// Pointwise difference; throws PreconditionViolated if it would go negative.
  DivisorP1 operator-(const DivisorP1& other) const;
  bool operator==(const DivisorP1&) const = default;

 private:
  Map m_;
};

DivisorP1 divisor_of(const BinaryForm& f);

DivisorP1 gcd_div(const DivisorP1& a, const DivisorP1& b);
DivisorP1 lcm_div(const DivisorP1& a, const DivisorP1& b);
bool leq(const DivisorP1& a, const DivisorP1& b);
bool disjoint(const DivisorP1& a, const DivisorP1& b);
int mobius(const DivisorP1& d);

/// All effective divisors E <= d.
std::vector<DivisorP1> subdivisors(const DivisorP1& d);

/// Number of closed points of degree n on P^1 over F_q.
mpz_class points_by_degree(std::uint64_t q, int n);

/// All monic irreducibles of degree n over the field, in Poly order.
std::vector<Poly> monic_irreducibles(const FieldCtx& ctx, int n);

/// Forms of degree d are indexed 0..q^(d+1)-1 with c_0 as the most
/// significant base-q digit, so increasing index is lexicographic order.
BinaryForm form_from_index(const FieldCtx& ctx, int d, std::uint64_t index);

/// q^(d+1) as an exact integer.
mpz_class section_count(std::uint64_t q, int d);

/// Lexicographic stream of forms of degree d.
class SectionStream {
 public:
  /// Throws BudgetExceeded if q^(d+1) > budget.
  SectionStream(FieldCtx ctx, int d, bool nonzero_only, std::uint64_t budget);

  std::optional<BinaryForm> next();
  std::uint64_t size() const noexcept { return end_ - begin_; }

 private:
  FieldCtx ctx_;
  int d_;
  std::uint64_t begin_;
  std::uint64_t end_;
  std::uint64_t cur_;
};

}  // namespace dp5::p1
