#include "dp5/certified.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <utility>

#include "dp5/error.hpp"

namespace dp5::certified {

Real::Real() { mpfr_init2(v_, kPrecision); }

Real::Real(const Real& other) {
  mpfr_init2(v_, kPrecision);
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept : Real() { mpfr_swap(v_, other.v_); }

Real& Real::operator=(Real other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

mpq_class Real::to_rational() const {
  mpq_class out;
  mpfr_get_q(out.get_mpq_t(), v_);
  return out;
}

namespace {

std::string render(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDg" : rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt, digits, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

CertifiedReal CertifiedReal::exact(const mpq_class& x) { return between(x, x); }

CertifiedReal CertifiedReal::between(const mpq_class& lo, const mpq_class& hi) {
  if (lo > hi) throw Error(ErrorCode::PreconditionViolated, "interval with lo > hi");
  CertifiedReal r;
  mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::operator+(const CertifiedReal& o) const {
  CertifiedReal r;
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::operator-() const {
  CertifiedReal r;
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::operator-(const CertifiedReal& o) const { return *this + (-o); }

CertifiedReal CertifiedReal::operator*(const CertifiedReal& o) const {
  const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> corners{
      {{lo_.get(), o.lo_.get()}, {lo_.get(), o.hi_.get()}, {hi_.get(), o.lo_.get()}, {hi_.get(), o.hi_.get()}}};
  CertifiedReal r;
  Real down, up;
  bool first = true;
  for (const auto& [a, b] : corners) {
    mpfr_mul(down.get(), a, b, MPFR_RNDD);
    mpfr_mul(up.get(), a, b, MPFR_RNDU);
    if (first || mpfr_less_p(down.get(), r.lo_.get())) mpfr_set(r.lo_.get(), down.get(), MPFR_RNDD);
    if (first || mpfr_greater_p(up.get(), r.hi_.get())) mpfr_set(r.hi_.get(), up.get(), MPFR_RNDU);
    first = false;
  }
  return r;
}

CertifiedReal CertifiedReal::exp() const {
  CertifiedReal r;
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::log1p() const {
  Real minus_one;
  mpfr_set_si(minus_one.get(), -1, MPFR_RNDN);
  if (!mpfr_greater_p(lo_.get(), minus_one.get())) {
    throw Error(ErrorCode::PreconditionViolated, "log1p of an interval reaching -1");
  }
  CertifiedReal r;
  mpfr_log1p(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log1p(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::widen(const mpq_class& rad) const {
  CertifiedReal r;
  mpfr_sub_q(r.lo_.get(), lo_.get(), rad.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(r.hi_.get(), hi_.get(), rad.get_mpq_t(), MPFR_RNDU);
  return r;
}

mpq_class CertifiedReal::mid() const { return (lo() + hi()) / 2; }

mpq_class CertifiedReal::rad() const { return (hi() - lo()) / 2; }

bool CertifiedReal::contains(const mpq_class& x) const { return lo() <= x && x <= hi(); }

bool CertifiedReal::contains(const CertifiedReal& inner) const {
  return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) && mpfr_lessequal_p(inner.hi_.get(), hi_.get());
}

bool CertifiedReal::overlaps(const CertifiedReal& o) const {
  return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
}

std::string CertifiedReal::to_string(int digits) const {
  return "[" + render(lo_.get(), digits, MPFR_RNDD) + ", " + render(hi_.get(), digits, MPFR_RNDU) + "]";
}

std::string format_decimal(const mpq_class& x, int digits) {
  Real v;
  mpfr_set_q(v.get(), x.get_mpq_t(), MPFR_RNDN);
  return render(v.get(), digits, MPFR_RNDN);
}

}  // namespace dp5::certified
