#include "dp5/motivic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <random>

#include "dp5/error.hpp"
#include "dp5/p1.hpp"

namespace dp5::motivic {

SeriesL::SeriesL(int trunc) : c_(static_cast<std::size_t>(std::max(trunc, 0)), mpz_class(0)) {}

SeriesL::SeriesL(int trunc, std::vector<mpz_class> coeffs) : SeriesL(trunc) {
  const std::size_t n = std::min(coeffs.size(), c_.size());
  for (std::size_t i = 0; i < n; ++i) c_[i] = std::move(coeffs[i]);
}

SeriesL SeriesL::one(int trunc) {
  SeriesL s(trunc);
  if (trunc > 0) s.c_[0] = 1;
  return s;
}

SeriesL SeriesL::one_minus_power(int trunc, int k) {
  SeriesL s = one(trunc);
  if (k < trunc) s.c_[static_cast<std::size_t>(k)] -= 1;
  return s;
}

SeriesL SeriesL::operator+(const SeriesL& o) const {
  SeriesL r(std::min(trunc(), o.trunc()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

SeriesL SeriesL::operator-(const SeriesL& o) const {
  SeriesL r(std::min(trunc(), o.trunc()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

SeriesL SeriesL::operator*(const SeriesL& o) const {
  const std::size_t n = static_cast<std::size_t>(std::min(trunc(), o.trunc()));
  SeriesL r(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  return r;
}

SeriesL SeriesL::inverse() const {
  if (c_.empty()) return *this;
  const mpz_class& a0 = c_[0];
  if (a0 != 1 && a0 != -1) throw Error(ErrorCode::NonUnit, "constant term " + a0.get_str() + " is not a unit");
  SeriesL r(trunc());
  r.c_[0] = a0;  // 1/a0 == a0 for a0 = +-1
  for (std::size_t n = 1; n < c_.size(); ++n) {
    mpz_class acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc += c_[i] * r.c_[n - i];
    r.c_[n] = -acc * a0;
  }
  return r;
}

SeriesL SeriesL::pow(const mpz_class& e) const {
  SeriesL base = e < 0 ? inverse() : *this;
  mpz_class k = abs(e);
  SeriesL result = one(trunc());
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

SeriesL SeriesL::substitute(int k) const {
  if (k < 1) throw Error(ErrorCode::PreconditionViolated, "substitution u -> u^k needs k >= 1");
  SeriesL r(trunc());
  for (std::size_t i = 0; i * static_cast<std::size_t>(k) < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(k)] = c_[i];
  return r;
}

SeriesL SeriesL::times_L() const {
  if (c_.empty() || c_[0] != 0) throw Error(ErrorCode::PreconditionViolated, "multiplication by L leaves the series ring");
  return SeriesL(trunc() - 1, std::vector<mpz_class>(c_.begin() + 1, c_.end()));
}

mpq_class SeriesL::specialize(const mpq_class& x) const {
  mpq_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string SeriesL::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const bool neg = c_[i] < 0;
    const std::string mag = mpz_class(abs(c_[i])).get_str();
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    out += mag;
    if (i == 1) out += "*u";
    if (i > 1) out += "*u^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

SeriesL kapranov_inverse_at(int k, int trunc) {
  if (k < 2) throw Error(ErrorCode::DegenerateK, "factor (1 - u^(k-1)) vanishes for k = " + std::to_string(k));
  return SeriesL::one_minus_power(trunc, k) * SeriesL::one_minus_power(trunc, k - 1);
}

std::vector<std::vector<std::int64_t>> mobius_motivic_p1() { return {{1}, {-1, -1}, {0, 1}}; }

mpz_class divisor_class_at(int d, std::int64_t q) {
  mpz_class total = 0;
  mpz_class term = 1;
  for (int i = 0; i <= d; ++i) {
    total += term;
    term *= q;
  }
  return total;
}

namespace {

int int_mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

// (1 - u^j)^e modulo u^trunc via the binomial series.
SeriesL one_minus_power_pow(int trunc, int j, const mpz_class& e) {
  std::vector<mpz_class> c(static_cast<std::size_t>(trunc), mpz_class(0));
  mpz_class binom = 1;  // C(e, i) for integer e of either sign
  for (int i = 0; static_cast<long>(i) * j < trunc; ++i) {
    if (i > 0) {
      binom *= e - (i - 1);
      binom /= i;
    }
    c[static_cast<std::size_t>(i * j)] = (i % 2 == 0) ? binom : mpz_class(-binom);
    if (binom == 0) break;
  }
  return SeriesL(trunc, std::move(c));
}

}  // namespace

std::vector<mpz_class> witt_exponents(const std::vector<mpz_class>& f, int K) {
  if (f.empty() || f[0] != 1) throw Error(ErrorCode::PreconditionViolated, "series must have constant term 1");
  auto coeff = [&](int i) { return i < static_cast<int>(f.size()) ? f[static_cast<std::size_t>(i)] : mpz_class(0); };
  // p_n = n * [x^n] log F, from x F' = F * sum p_n x^n.
  std::vector<mpz_class> p(static_cast<std::size_t>(K) + 1, mpz_class(0));
  for (int n = 1; n <= K; ++n) {
    mpz_class acc = n * coeff(n);
    for (int i = 1; i < n; ++i) acc -= p[static_cast<std::size_t>(i)] * coeff(n - i);
    p[static_cast<std::size_t>(n)] = acc;
  }
  std::vector<mpz_class> e(static_cast<std::size_t>(K) + 1, mpz_class(0));
  for (int k = 1; k <= K; ++k) {
    mpz_class acc = 0;
    for (int d = 1; d <= k; ++d) {
      if (k % d == 0) acc += int_mobius(k / d) * p[static_cast<std::size_t>(d)];
    }
    if (acc % k != 0) throw Error(ErrorCode::NonIntegralExponent, "exponent " + std::to_string(k) + " is not an integer");
    e[static_cast<std::size_t>(k)] = -acc / k;
  }
  return e;
}

std::vector<mpz_class> local_factor_coefficients() { return {1, 0, -14, 35, -35, 14, 0, -1}; }

SeriesL motivic_constant(int trunc) {
  if (trunc < 1) throw Error(ErrorCode::PreconditionViolated, "truncation must be >= 1");
  const auto e = witt_exponents(local_factor_coefficients(), std::max(trunc, 2));
  SeriesL out = SeriesL::one_minus_power(trunc, 1).pow(-5);
  for (int k = 2; k <= trunc; ++k) {
    const mpz_class& ek = e[static_cast<std::size_t>(k)];
    if (ek == 0) continue;
    out = out * one_minus_power_pow(trunc, k, ek) * one_minus_power_pow(trunc, k - 1, ek);
  }
  return out;
}

IntPoly poly_trim(IntPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

namespace {

int pattern_exponent(const std::array<int, 4>& e) {
  return std::max({e[0], e[1], e[2]}) + std::max({e[0], e[1], e[3]}) + std::max({std::min(e[0], e[1]), e[2], e[3]});
}

void add_term(IntPoly& p, int exponent, int sign) {
  if (p.size() <= static_cast<std::size_t>(exponent)) p.resize(static_cast<std::size_t>(exponent) + 1, 0);
  p[static_cast<std::size_t>(exponent)] += sign;
}

}  // namespace

IntPoly pattern_sum_generic() {
  IntPoly out;
  for (int mask = 0; mask < 16; ++mask) {
    std::array<int, 4> e{};
    for (int i = 0; i < 4; ++i) e[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    add_term(out, pattern_exponent(e), std::popcount(static_cast<unsigned>(mask)) % 2 ? -1 : 1);
  }
  return poly_trim(std::move(out));
}

IntPoly pattern_sum_dividing(int i) {
  IntPoly out;
  for (int bit = 0; bit <= 1; ++bit) {
    std::array<int, 4> e{};
    e[static_cast<std::size_t>(i - 1)] = bit;
    add_term(out, pattern_exponent(e), bit ? -1 : 1);
  }
  return poly_trim(std::move(out));
}

namespace {

std::string show(const IntPoly& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

IntPoly one_minus_x_pow(int n) {
  IntPoly r{1};
  for (int i = 0; i < n; ++i) r = poly_mul(r, {1, -1});
  return r;
}

}  // namespace

std::vector<IdentityCheck> local_identity_checks(std::uint64_t seed) {
  std::vector<IdentityCheck> out;

  {
    const IntPoly got = pattern_sum_generic();
    const IntPoly want{1, 0, -4, 3};
    out.push_back({"generic pattern sum = 1 - 4x^2 + 3x^3", got == want, show(got)});
  }
  {
    bool ok = true;
    std::string detail;
    for (int i = 1; i <= 4; ++i) {
      const IntPoly got = pattern_sum_dividing(i);
      ok = ok && got == IntPoly{1, 0, -1};
      detail += (i > 1 ? " " : "") + show(got);
    }
    out.push_back({"pattern sum at a point dividing a_i = 1 - x^2", ok, detail});
  }
  {
    const IntPoly inner = poly_add(IntPoly{1, 0, -4, 3}, poly_mul({0, 4}, {1, 0, -1}));
    const IntPoly lhs = poly_mul(one_minus_x_pow(4), inner);
    const IntPoly rhs = poly_mul(one_minus_x_pow(5), {1, 5, 1});
    out.push_back({"(1-x)^4 (1 + 4x - 4x^2 - x^3) = (1-x)^5 (1 + 5x + x^2)", lhs == rhs && inner == IntPoly{1, 4, -4, -1},
                   show(lhs)});
  }
  {
    std::mt19937_64 rng(seed);
    bool ok = true;
    std::string detail;
    int trials = 0;
    for (std::uint32_t q : {2u, 3u}) {
      const auto ctx = gf::FieldCtx::of_order(q);
      std::vector<p1::ClosedPoint> pts{p1::ClosedPoint::infinity()};
      for (int n = 1; n <= 3; ++n) {
        for (auto& p : p1::monic_irreducibles(ctx, n)) pts.push_back(p1::ClosedPoint::finite(std::move(p)));
      }
      for (int t = 0; t < 10; ++t) {
        p1::DivisorP1 a;
        for (const auto& p : pts) {
          if (rng() % 3 == 0) a = a + p1::DivisorP1::point(p);
        }
        IntPoly lhs;
        for (const auto& e : p1::subdivisors(a)) add_term(lhs, e.degree(), p1::mobius(e));
        lhs = poly_trim(std::move(lhs));
        IntPoly rhs{1};
        for (const auto& [p, m] : a.entries()) {
          IntPoly f(static_cast<std::size_t>(p.degree()) + 1, 0);
          f[0] = 1;
          f.back() -= 1;
          rhs = poly_mul(rhs, f);
        }
        ++trials;
        if (lhs != rhs) {
          ok = false;
          detail = "mismatch at q=" + std::to_string(q) + ": " + show(lhs) + " vs " + show(rhs);
        }
      }
    }
    if (ok) detail = std::to_string(trials) + " squarefree divisors";
    out.push_back({"sum_{E<=A} mu(E) x^deg E = prod_{v|A} (1 - x^deg v)", ok, detail});
  }
  return out;
}

}  // namespace dp5::motivic
