#include "dp5/constants.hpp"

#include <string>
#include <utility>

#include "dp5/error.hpp"
#include "dp5/motivic.hpp"

namespace dp5::constants {

namespace {

int int_mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  std::int64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

mpz_class ipow(std::int64_t base, int exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return out;
}

mpq_class qpow(const mpq_class& x, int exp) {
  mpq_class out = 1;
  for (int i = 0; i < exp; ++i) out *= x;
  return out;
}

// Bound on the log-tail of the Euler product beyond degree N.
mpq_class direct_tail(const CurveZeta& curve, int N) {
  const std::int64_t q = curve.q();
  const mpz_class qN = ipow(q, N);
  const mpq_class inv_next(1, qN * q);
  mpq_class t(kLogBound * (2 + 2 * curve.genus()), qN);
  t /= mpq_class((N + 1) * (q - 1));
  t /= 1 - inv_next;
  return t;
}

int ceil_sqrt(std::int64_t q) {
  std::int64_t r = 0;
  while (r * r < q) ++r;
  return static_cast<int>(r);
}

// Bound on the log-tail of the zeta rewrite beyond K.
mpq_class zeta_tail(const CurveZeta& curve, int K) {
  const std::int64_t q = curve.q();
  const mpq_class A = mpq_class(25, 24) * (1 + q + 2 * curve.genus() * ceil_sqrt(q));
  const mpq_class ratio = kExponentGrowth / q;
  mpq_class t = 6 * A / (mpq_class(ipow(q, K)) * (q - 1));
  t += 2 * A / (K + 1) * qpow(ratio, K + 1) / (1 - ratio);
  return t;
}

ConstantEstimate assemble(const CurveZeta& curve, const CertifiedReal& log_sum, const mpq_class& tail, int terms) {
  const CertifiedReal product = log_sum.widen(tail).exp();
  return {CertifiedReal::exact(prefactor(curve)) * product, terms, tail};
}

void require_zeta_range(const CurveZeta& curve) {
  if (curve.q() <= 4) {
    throw Error(ErrorCode::Diverges, "zeta rewrite needs q >= 5; the exponents grow like 4.79^k (q = " +
                                         std::to_string(curve.q()) + ")");
  }
}

CertifiedReal zeta_log_sum(const CurveZeta& curve, const std::vector<mpz_class>& e, int K) {
  CertifiedReal sum = CertifiedReal::exact(mpq_class(0));
  const mpz_class q(static_cast<long>(curve.q()));
  mpz_class qk = q;
  for (int k = 2; k <= K; ++k) {
    qk *= q;
    const mpz_class& ek = e[static_cast<std::size_t>(k)];
    if (ek == 0) continue;
    const mpq_class z = curve.zeta_at(mpq_class(1, qk));
    sum = sum - CertifiedReal::exact(ek) * CertifiedReal::exact(mpq_class(z - 1)).log1p();
  }
  return sum;
}

}  // namespace

CurveZeta::CurveZeta(std::int64_t q, int g, std::vector<std::int64_t> weil) : q_(q), g_(g), weil_(std::move(weil)) {}

CurveZeta CurveZeta::from_weil(std::int64_t q, int g, std::vector<std::int64_t> weil) {
  if (!is_prime_power(q)) throw Error(ErrorCode::InvalidWeilData, "q = " + std::to_string(q) + " is not a prime power");
  if (g < 0) throw Error(ErrorCode::InvalidWeilData, "negative genus");
  if (weil.size() != static_cast<std::size_t>(2 * g + 1)) {
    throw Error(ErrorCode::InvalidWeilData, "Weil numerator must have 2g + 1 = " + std::to_string(2 * g + 1) +
                                                " coefficients, got " + std::to_string(weil.size()));
  }
  if (weil.front() != 1) throw Error(ErrorCode::InvalidWeilData, "Weil numerator must satisfy P(0) = 1");
  if (weil.back() == 0) throw Error(ErrorCode::InvalidWeilData, "Weil numerator must have degree exactly 2g");

  CurveZeta c(q, g, std::move(weil));
  // Power sums of the inverse roots: p_m = m [T^m] log P = -s_m.
  std::vector<mpz_class> p(static_cast<std::size_t>(kDirectCap) + 1, mpz_class(0));
  auto coeff = [&](int i) { return i <= 2 * g ? mpz_class(static_cast<long>(c.weil_[static_cast<std::size_t>(i)])) : mpz_class(0); };
  for (int m = 1; m <= kDirectCap; ++m) {
    mpz_class acc = m * coeff(m);
    for (int i = 1; i < m; ++i) acc -= p[static_cast<std::size_t>(i)] * coeff(m - i);
    p[static_cast<std::size_t>(m)] = acc;
  }
  c.points_.assign(static_cast<std::size_t>(kDirectCap) + 1, mpz_class(0));
  c.closed_.assign(static_cast<std::size_t>(kDirectCap) + 1, mpz_class(0));
  for (int m = 1; m <= kDirectCap; ++m) c.points_[static_cast<std::size_t>(m)] = ipow(q, m) + 1 + p[static_cast<std::size_t>(m)];
  for (int n = 1; n <= kDirectCap; ++n) {
    mpz_class acc = 0;
    for (int m = 1; m <= n; ++m) {
      if (n % m == 0) acc += int_mobius(n / m) * c.points_[static_cast<std::size_t>(m)];
    }
    if (acc < 0 || acc % n != 0) {
      throw Error(ErrorCode::NegativePointCount,
                  "Weil data gives an invalid count of degree-" + std::to_string(n) + " points: " + acc.get_str() + "/" +
                      std::to_string(n));
    }
    c.closed_[static_cast<std::size_t>(n)] = acc / n;
  }
  return c;
}

CurveZeta CurveZeta::projective_line(std::int64_t q) { return from_weil(q, 0, {1}); }

mpz_class CurveZeta::class_number() const {
  mpz_class h = 0;
  for (auto c : weil_) h += static_cast<long>(c);
  return h;
}

mpz_class CurveZeta::points(int m) const {
  if (m < 1 || m > kDirectCap) throw Error(ErrorCode::PreconditionViolated, "point count degree out of range");
  return points_[static_cast<std::size_t>(m)];
}

mpz_class CurveZeta::closed_points(int n) const {
  if (n < 1 || n > kDirectCap) throw Error(ErrorCode::PreconditionViolated, "closed point degree out of range");
  return closed_[static_cast<std::size_t>(n)];
}

mpq_class CurveZeta::zeta_at(const mpq_class& t) const {
  mpq_class num = 0;
  for (std::size_t i = weil_.size(); i-- > 0;) num = num * t + static_cast<long>(weil_[i]);
  const mpq_class den = (1 - t) * (1 - mpq_class(static_cast<long>(q_)) * t);
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zeta function evaluated at a pole");
  return num / den;
}

mpq_class local_factor(const mpq_class& x) {
  mpq_class acc = 0;
  const auto coeffs = motivic::local_factor_coefficients();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

mpq_class exponent_bound(int k) { return 6 + 2 * qpow(kExponentGrowth, k) / k; }

mpq_class prefactor(const CurveZeta& curve) {
  const mpq_class base = mpq_class(curve.class_number(), ipow(curve.q(), curve.genus())) /
                         (1 - mpq_class(1, static_cast<long>(curve.q())));
  return qpow(base, 5);
}

ConstantEstimate leading_constant_direct(const CurveZeta& curve, const mpq_class& target) {
  if (target <= 0) throw Error(ErrorCode::PreconditionViolated, "target radius must be positive");
  const std::int64_t q = curve.q();
  const mpq_class budget = target / (4 * prefactor(curve));
  int N = 0;
  while (mpq_class(1, ipow(q, N + 1)) > kLogBoundRange || direct_tail(curve, N) > budget) {
    if (++N > kDirectCap) {
      throw Error(ErrorCode::TargetUnreachable, "direct product would need more than " + std::to_string(kDirectCap) +
                                                    " degrees for this target");
    }
  }
  CertifiedReal sum = CertifiedReal::exact(mpq_class(0));
  for (int n = 1; n <= N; ++n) {
    const mpq_class y = local_factor(mpq_class(1, ipow(q, n))) - 1;
    sum = sum + CertifiedReal::exact(curve.closed_points(n)) * CertifiedReal::exact(y).log1p();
  }
  return assemble(curve, sum, direct_tail(curve, N), N);
}

ConstantEstimate leading_constant_zeta(const CurveZeta& curve, int K) {
  require_zeta_range(curve);
  if (K < 2) throw Error(ErrorCode::PreconditionViolated, "zeta truncation must be >= 2");
  const auto e = motivic::witt_exponents(motivic::local_factor_coefficients(), K);
  return assemble(curve, zeta_log_sum(curve, e, K), zeta_tail(curve, K), K);
}

ConstantEstimate leading_constant_zeta_target(const CurveZeta& curve, const mpq_class& target) {
  require_zeta_range(curve);
  if (target <= 0) throw Error(ErrorCode::PreconditionViolated, "target radius must be positive");
  const mpq_class budget = target / (4 * prefactor(curve));
  // The tail decays geometrically, so a doubling search followed by bisection
  // finds the smallest admissible K.
  int hi = 2;
  while (zeta_tail(curve, hi) > budget) {
    if (hi >= kZetaCap) {
      throw Error(ErrorCode::TargetUnreachable, "zeta rewrite would need more than " + std::to_string(kZetaCap) +
                                                    " exponents for this target");
    }
    hi = std::min(2 * hi, kZetaCap);
  }
  int lo = hi / 2;
  while (lo + 1 < hi) {
    const int mid = (lo + hi) / 2;
    (zeta_tail(curve, mid) > budget ? lo : hi) = mid;
  }
  return leading_constant_zeta(curve, std::max(hi, 2));
}

}  // namespace dp5::constants
