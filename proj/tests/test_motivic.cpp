#include <gtest/gtest.h>

#include "dp5/motivic.hpp"
#include "dp5/p1.hpp"
#include "error_code.hpp"

using namespace dp5::motivic;
using dp5::ErrorCode;
using testutil::code_of;

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// prod_k (1 - x^k)^e_k mod x^(n+1), each factor expanded by the generalized
/// binomial series.
std::vector<mpz_class> reconstruct(const std::vector<mpz_class>& e, int n) {
  std::vector<mpz_class> acc(static_cast<std::size_t>(n) + 1, 0);
  acc[0] = 1;
  for (int k = 1; k < static_cast<int>(e.size()) && k <= n; ++k) {
    std::vector<mpz_class> factor(static_cast<std::size_t>(n) + 1, 0);
    mpz_class coeff = 1;  // (-1)^j C(e, j)
    for (int j = 0; j * k <= n; ++j) {
      factor[static_cast<std::size_t>(j * k)] = coeff;
      coeff = -coeff * (e[static_cast<std::size_t>(k)] - j) / (j + 1);
    }
    std::vector<mpz_class> next(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) next[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
    acc = std::move(next);
  }
  return acc;
}

/// Coefficients of prod_n (1 - t^n)^(-P_n) up to t^max: effective divisors
/// of P^1 over F_q by degree, from the closed-point census.
std::vector<mpz_class> divisor_census(std::uint64_t q, int max) {
  std::vector<mpz_class> acc(static_cast<std::size_t>(max) + 1, 0);
  acc[0] = 1;
  for (int n = 1; n <= max; ++n) {
    for (mpz_class i = 0; i < dp5::p1::points_by_degree(q, n); ++i) {
      for (int d = n; d <= max; ++d) acc[static_cast<std::size_t>(d)] += acc[static_cast<std::size_t>(d - n)];
    }
  }
  return acc;
}

}  // namespace

TEST(SeriesL, Arithmetic) {
  const SeriesL a(5, {1, 2, 3});
  const SeriesL b(5, {0, 1});
  EXPECT_EQ(a + b, SeriesL(5, {1, 3, 3}));
  EXPECT_EQ(a - a, SeriesL(5));
  EXPECT_EQ(a * b, SeriesL(5, {0, 1, 2, 3}));
  EXPECT_EQ(SeriesL(3, {1, 1, 1, 1, 1}), SeriesL(3, {1, 1, 1}));
  EXPECT_EQ(a * a.inverse(), SeriesL::one(5));
  EXPECT_EQ(SeriesL::one_minus_power(6, 2), SeriesL(6, {1, 0, -1}));
  EXPECT_EQ(SeriesL(5, {1, 0, -2}).to_string(), "1 - 2*u^2");
}

TEST(SeriesL, PowerMatchesBinomials) {
  const int n = 20;
  const auto p = SeriesL::one_minus_power(n, 1).pow(-5);
  for (int i = 0; i < n; ++i) EXPECT_EQ(p[i], binomial(static_cast<unsigned long>(i + 4), 4)) << i;
  const SeriesL x(n, {1, 3, -1, 2});
  SeriesL repeated = SeriesL::one(n);
  for (int i = 0; i < 7; ++i) repeated = repeated * x;
  EXPECT_EQ(x.pow(7), repeated);
  EXPECT_EQ(x.pow(0), SeriesL::one(n));
  EXPECT_EQ(x.pow(-3) * x.pow(3), SeriesL::one(n));
}

TEST(SeriesL, SubstituteAndTimesL) {
  const SeriesL a(8, {1, 2, 3});
  EXPECT_EQ(a.substitute(3), SeriesL(8, {1, 0, 0, 2, 0, 0, 3}));
  EXPECT_EQ(SeriesL(4, {0, 5, 6, 7}).times_L(), SeriesL(3, {5, 6, 7}));
  EXPECT_EQ(code_of([] { SeriesL(4, {1, 1}).times_L(); }), ErrorCode::PreconditionViolated);
}

TEST(SeriesL, NonUnit) {
  EXPECT_EQ(code_of([] { SeriesL(4, {2, 1}).inverse(); }), ErrorCode::NonUnit);
  EXPECT_EQ(code_of([] { SeriesL(4, {0, 1}).pow(-1); }), ErrorCode::NonUnit);
  EXPECT_EQ(SeriesL(4, {-1}).inverse(), SeriesL(4, {-1}));
}

TEST(SeriesL, SpecializationIsAHomomorphism) {
  const SeriesL a(10, {1, -3, 4, 0, 7});
  const SeriesL b(10, {2, 1, -1});
  for (const mpq_class x : {mpq_class(1, 2), mpq_class(-2, 3), mpq_class(1, 7)}) {
    EXPECT_EQ((a + b).specialize(x), a.specialize(x) + b.specialize(x));
    // a * b has degree 6 < 10, so nothing is truncated
    EXPECT_EQ((a * b).specialize(x), a.specialize(x) * b.specialize(x));
  }
}

TEST(Kapranov, InverseFactor) {
  const auto k2 = kapranov_inverse_at(2, 6);
  EXPECT_EQ(k2, SeriesL(6, {1, -1, -1, 1}));
  EXPECT_EQ(k2.specialize(mpq_class(1, 2)), mpq_class(3, 8));
  EXPECT_EQ(code_of([] { kapranov_inverse_at(1, 6); }), ErrorCode::DegenerateK);
}

TEST(Kapranov, MobiusMatchesEnumeration) {
  const auto coeffs = mobius_motivic_p1();
  ASSERT_EQ(coeffs.size(), 3u);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto f = dp5::gf::FieldCtx::of_order(q);
    for (int d = 0; d <= 4; ++d) {
      // every divisor appears once per nonzero scalar
      std::int64_t sum = 0;
      dp5::p1::SectionStream forms(f, d, true, 1u << 20);
      while (auto form = forms.next()) sum += dp5::p1::mobius(dp5::p1::divisor_of(*form));
      std::int64_t expect = 0;
      if (d < 3) {
        std::int64_t pw = 1;
        for (auto c : coeffs[static_cast<std::size_t>(d)]) {
          expect += c * pw;
          pw *= q;
        }
      }
      EXPECT_EQ(sum, expect * (q - 1)) << "q=" << q << " d=" << d;
    }
  }
}

TEST(Kapranov, DivisorClassMatchesCensus) {
  for (std::uint64_t q : {2u, 3u, 5u}) {
    const auto census = divisor_census(q, 6);
    for (int d = 0; d <= 6; ++d) EXPECT_EQ(divisor_class_at(d, static_cast<std::int64_t>(q)), census[static_cast<std::size_t>(d)]);
  }
}

TEST(Witt, Examples) {
  const auto e = witt_exponents({1, -1}, 6);
  EXPECT_EQ(e[1], 1);
  for (int k = 2; k <= 6; ++k) EXPECT_EQ(e[static_cast<std::size_t>(k)], 0);
  const auto series = (SeriesL::one_minus_power(7, 1).pow(3) * SeriesL::one_minus_power(7, 2).pow(-2)).coeffs();
  const auto e2 = witt_exponents(series, 6);
  EXPECT_EQ(e2[1], 3);
  EXPECT_EQ(e2[2], -2);
  for (int k = 3; k <= 6; ++k) EXPECT_EQ(e2[static_cast<std::size_t>(k)], 0);
  EXPECT_EQ(code_of([] { witt_exponents({2, 1}, 3); }), ErrorCode::PreconditionViolated);
}

TEST(Witt, LocalFactorReconstructs) {
  const int K = 24;
  const auto f = local_factor_coefficients();
  EXPECT_EQ(f, (std::vector<mpz_class>{1, 0, -14, 35, -35, 14, 0, -1}));
  const auto e = witt_exponents(f, K);
  EXPECT_EQ(e[1], 0);
  EXPECT_EQ(e[2], 14);
  const auto back = reconstruct(e, K);
  for (int i = 0; i <= K; ++i) EXPECT_EQ(back[static_cast<std::size_t>(i)], i < static_cast<int>(f.size()) ? f[static_cast<std::size_t>(i)] : 0) << i;
}

TEST(MotivicConstant, LeadingTerms) {
  const auto c = motivic_constant(40);
  EXPECT_EQ(c.trunc(), 40);
  EXPECT_EQ(c[0], 1);
  // 5 from (1 - u)^-5 and -14 from (1 - u)^e_2
  EXPECT_EQ(c[1], -9);
}

TEST(MotivicConstant, StableUnderTruncation) {
  const auto short_c = motivic_constant(15);
  const auto long_c = motivic_constant(40);
  for (int i = 0; i < 15; ++i) EXPECT_EQ(short_c[i], long_c[i]) << i;
}

TEST(MotivicConstant, MatchesEulerProductSeries) {
  // Regrouped: (1 - u)^(e_2 - 5) prod_{k >= 2} (1 - u^k)^(e_k + e_(k+1)).
  const int n = 25;
  const auto e = witt_exponents(local_factor_coefficients(), n + 1);
  std::vector<mpz_class> combined(static_cast<std::size_t>(n) + 1, 0);
  combined[1] = -5 + e[2];
  for (int k = 2; k <= n; ++k) combined[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k)] + e[static_cast<std::size_t>(k + 1)];
  const auto expect = reconstruct(combined, n);
  const auto c = motivic_constant(n + 1);
  for (int i = 0; i <= n; ++i) EXPECT_EQ(c[i], expect[static_cast<std::size_t>(i)]) << i;
}

TEST(LocalIdentities, AllHold) {
  for (const auto& check : local_identity_checks(7)) EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  EXPECT_EQ(poly_trim(pattern_sum_generic()), (IntPoly{1, 0, -4, 3}));
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(poly_trim(pattern_sum_dividing(i)), (IntPoly{1, 0, -1}));
  const IntPoly lhs = poly_mul(poly_mul(poly_mul(IntPoly{1, -1}, IntPoly{1, -1}), poly_mul(IntPoly{1, -1}, IntPoly{1, -1})), IntPoly{1, 4, -4, -1});
  IntPoly rhs{1, 5, 1};
  for (int i = 0; i < 5; ++i) rhs = poly_mul(rhs, IntPoly{1, -1});
  EXPECT_EQ(poly_trim(lhs), poly_trim(rhs));
}
