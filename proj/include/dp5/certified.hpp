#pragma once

// Closed real intervals with MPFR endpoints. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the true value always stays
// inside.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace dp5::certified {

inline constexpr mpfr_prec_t kPrecision = 256;

/// Owning mpfr_t.
class Real {
 public:
  Real();
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(Real other) noexcept;
  ~Real();

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpq_class to_rational() const;

 private:
  mpfr_t v_;
};

class CertifiedReal {
 public:
  /// Smallest representable interval containing x.
  static CertifiedReal exact(const mpq_class& x);
  static CertifiedReal exact(const mpz_class& x) { return exact(mpq_class(x)); }
  /// [lo, hi], rounded outward. Requires lo <= hi.
  static CertifiedReal between(const mpq_class& lo, const mpq_class& hi);

  CertifiedReal operator+(const CertifiedReal& o) const;
  CertifiedReal operator-(const CertifiedReal& o) const;
  CertifiedReal operator*(const CertifiedReal& o) const;
  CertifiedReal operator-() const;
  CertifiedReal exp() const;
  /// log(1 + x); requires lo > -1.
  CertifiedReal log1p() const;
  /// [lo - r, hi + r].
  CertifiedReal widen(const mpq_class& r) const;

  mpq_class lo() const { return lo_.to_rational(); }
  mpq_class hi() const { return hi_.to_rational(); }
  mpq_class mid() const;
  mpq_class rad() const;

  bool contains(const mpq_class& x) const;
  bool contains(const CertifiedReal& inner) const;
  bool overlaps(const CertifiedReal& o) const;

  /// "[lo, hi]" with the given number of significant digits, rounded outward.
  std::string to_string(int digits = 20) const;

 private:
  Real lo_;
  Real hi_;
};

/// Decimal rendering with the given number of significant digits (round to
/// nearest), independent of the locale.
std::string format_decimal(const mpq_class& x, int digits);

}  // namespace dp5::certified
