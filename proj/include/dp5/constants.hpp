#pragma once

// Certified evaluation of the leading constant
//   c = (q^-g h / (1 - 1/q))^5 * prod_v F(q^-deg v),  F(x) = (1 - x)^5 (1 + 5x + x^2),
// for a curve described by its Weil numerator. Two independent evaluations:
// a truncated Euler product with an explicit tail, and a rewrite of the product
// as zeta values via the exponents F = prod_k (1 - x^k)^e_k.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "dp5/certified.hpp"

namespace dp5::constants {

using certified::CertifiedReal;

/// Largest Euler-product truncation the direct method accepts.
inline constexpr int kDirectCap = 64;
/// Largest zeta truncation the accelerated method accepts.
inline constexpr int kZetaCap = 20000;

class CurveZeta {
 public:
  /// weil = coefficients of P(T) low to high, P(0) = 1, degree exactly 2g.
  /// Throws InvalidWeilData on malformed input, NegativePointCount if some
  /// closed-point count up to degree kDirectCap is negative.
  static CurveZeta from_weil(std::int64_t q, int g, std::vector<std::int64_t> weil);
  static CurveZeta projective_line(std::int64_t q);

  std::int64_t q() const noexcept { return q_; }
  int genus() const noexcept { return g_; }
  const std::vector<std::int64_t>& weil() const noexcept { return weil_; }
  /// P(1) = #Pic^0.
  mpz_class class_number() const;
  /// #C(F_{q^m}), m >= 1.
  mpz_class points(int m) const;
  /// Number of closed points of degree n, 1 <= n <= kDirectCap.
  mpz_class closed_points(int n) const;
  /// P(T) / ((1 - T)(1 - qT)).
  mpq_class zeta_at(const mpq_class& t) const;

 private:
  CurveZeta(std::int64_t q, int g, std::vector<std::int64_t> weil);

  std::int64_t q_;
  int g_;
  std::vector<std::int64_t> weil_;
  std::vector<mpz_class> points_;  // index m, 1..kDirectCap
  std::vector<mpz_class> closed_;  // index n, 1..kDirectCap
};

/// (1 - x)^5 (1 + 5x + x^2).
mpq_class local_factor(const mpq_class& x);

/// |log F(x)| <= kLogBound x^2 / (1 - x) for 0 <= x <= kLogBoundRange.
inline constexpr int kLogBound = 15;
inline const mpq_class kLogBoundRange{1, 32};

/// |e_k| <= 6 + 2 B^k / k for the exponents of F, with B = 599/125.
inline const mpq_class kExponentGrowth{599, 125};
mpq_class exponent_bound(int k);

struct ConstantEstimate {
  CertifiedReal value;
  /// Euler-product degree N (direct) or zeta truncation K.
  int terms = 0;
  /// Bound on the discarded part of log c.
  mpq_class log_tail;
};

/// (q^-g h / (1 - 1/q))^5, exact.
mpq_class prefactor(const CurveZeta& curve);

/// Truncated Euler product; the radius of the result is at most target.
/// Throws TargetUnreachable if that needs more than kDirectCap degrees.
ConstantEstimate leading_constant_direct(const CurveZeta& curve, const mpq_class& target);

/// Zeta rewrite truncated at K >= 2. Throws Diverges for q <= 4.
ConstantEstimate leading_constant_zeta(const CurveZeta& curve, int K);

/// Zeta rewrite with the smallest K whose radius is at most target.
ConstantEstimate leading_constant_zeta_target(const CurveZeta& curve, const mpq_class& target);

}  // namespace dp5::constants
