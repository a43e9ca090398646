#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dp5/constants.hpp"
#include "dp5/motivic.hpp"
#include "dp5/p1.hpp"
#include "error_code.hpp"
#include "oracles.hpp"

using namespace dp5::constants;
using dp5::ErrorCode;
using testutil::code_of;

namespace {

mpq_class q_of(double x) { return mpq_class(x); }

/// Plain long-double Euler product over closed points of degree <= 200.
long double product_oracle(const CurveZeta& c, int max_deg) {
  const long double q = static_cast<long double>(c.q());
  long double log_sum = 0;
  for (int n = 1; n <= max_deg; ++n) {
    const long double x = std::pow(q, -static_cast<long double>(n));
    const long double count = n <= kDirectCap ? c.closed_points(n).get_d() : std::pow(q, static_cast<long double>(n)) / n;
    log_sum += count * (5 * std::log1p(-x) + std::log1p(5 * x + x * x));
  }
  const long double pre = prefactor(c).get_d();
  return pre * std::exp(log_sum);
}

}  // namespace

TEST(CurveZeta, ProjectiveLine) {
  const auto c = CurveZeta::projective_line(2);
  EXPECT_EQ(c.genus(), 0);
  EXPECT_EQ(c.class_number(), 1);
  EXPECT_EQ(c.closed_points(1), 3);
  EXPECT_EQ(c.closed_points(2), 1);
  EXPECT_EQ(c.closed_points(3), 2);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto f = dp5::gf::FieldCtx::of_order(q);
    const auto pl = CurveZeta::projective_line(q);
    for (int n = 1; n <= 4; ++n) {
      EXPECT_EQ(pl.closed_points(n), oracle::irreducible_count(f, n) + (n == 1 ? 1 : 0));
      EXPECT_EQ(pl.closed_points(n), dp5::p1::points_by_degree(q, n));
    }
  }
}

TEST(CurveZeta, EllipticCurve) {
  const auto c = CurveZeta::from_weil(2, 1, {1, 0, 2});
  EXPECT_EQ(c.points(1), 3);
  EXPECT_EQ(c.class_number(), 3);
  EXPECT_EQ(c.points(2), 4 + 1 - (0 - 2 * 2));
  // sum over n | m of n * a_n = N_m
  for (int m = 1; m <= 12; ++m) {
    mpz_class total = 0;
    for (int n = 1; n <= m; ++n)
      if (m % n == 0) total += n * c.closed_points(n);
    EXPECT_EQ(total, c.points(m));
  }
  EXPECT_EQ(c.zeta_at(mpq_class(1, 4)), mpq_class(9, 8) / (mpq_class(3, 4) * mpq_class(1, 2)));
}

TEST(CurveZeta, RejectsBadInput) {
  EXPECT_EQ(code_of([] { CurveZeta::from_weil(2, 1, {2, 0, 2}); }), ErrorCode::InvalidWeilData);
  EXPECT_EQ(code_of([] { CurveZeta::from_weil(6, 0, {1}); }), ErrorCode::InvalidWeilData);
  EXPECT_EQ(code_of([] { CurveZeta::from_weil(2, 1, {1, 0}); }), ErrorCode::InvalidWeilData);
  EXPECT_EQ(code_of([] { CurveZeta::from_weil(2, 1, {1, 0, 0}); }), ErrorCode::InvalidWeilData);
  // N_1 = 2 + 1 - 5 < 0
  EXPECT_EQ(code_of([] { CurveZeta::from_weil(2, 1, {1, -5, 2}); }), ErrorCode::NegativePointCount);
}

TEST(LocalFactor, Values) {
  EXPECT_EQ(local_factor(0), 1);
  EXPECT_EQ(local_factor(mpq_class(1, 2)), mpq_class(15, 128));
  EXPECT_EQ(local_factor(1), 0);
  const auto coeffs = dp5::motivic::local_factor_coefficients();
  for (const mpq_class x : {mpq_class(1, 3), mpq_class(2, 7), mpq_class(-1, 5)}) {
    mpq_class horner = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) horner = horner * x + *it;
    EXPECT_EQ(horner, local_factor(x));
  }
}

TEST(LocalFactor, LogBoundHolds) {
  for (int i = 1; i <= 400; ++i) {
    const double x = kLogBoundRange.get_d() * i / 400.0;
    const double lhs = std::abs(5 * std::log1p(-x) + std::log1p(5 * x + x * x));
    EXPECT_LE(lhs, kLogBound * x * x / (1 - x)) << x;
  }
}

TEST(LocalFactor, ExponentBound) {
  const auto e = dp5::motivic::witt_exponents(dp5::motivic::local_factor_coefficients(), 300);
  for (int k = 1; k <= 300; ++k) {
    EXPECT_LE(mpq_class(abs(e[static_cast<std::size_t>(k)])), exponent_bound(k)) << k;
  }
}

TEST(Prefactor, Values) {
  EXPECT_EQ(prefactor(CurveZeta::projective_line(2)), 32);
  EXPECT_EQ(prefactor(CurveZeta::projective_line(5)), mpq_class(3125, 1024));
  // (2^-1 * 3 / (1/2))^5 = 3^5
  EXPECT_EQ(prefactor(CurveZeta::from_weil(2, 1, {1, 0, 2})), 243);
}

TEST(LeadingConstant, DirectMeetsTarget) {
  const mpq_class target = q_of(1e-13);
  for (std::int64_t q : {2, 3, 4, 5, 101}) {
    const auto c = CurveZeta::projective_line(q);
    const auto est = leading_constant_direct(c, target);
    EXPECT_LE(est.value.rad(), target) << q;
    EXPECT_LT(abs(est.value.mid() - mpq_class(static_cast<double>(product_oracle(c, 200)))), q_of(1e-12)) << q;
  }
}

TEST(LeadingConstant, DualMethodsAgree) {
  const mpq_class target = q_of(1e-13);
  for (std::int64_t q : {5, 7, 8, 9}) {
    const auto c = CurveZeta::projective_line(q);
    const auto direct = leading_constant_direct(c, target);
    const auto zeta = leading_constant_zeta_target(c, target);
    EXPECT_TRUE(direct.value.overlaps(zeta.value)) << q;
    EXPECT_LE(zeta.value.rad(), target);
  }
  const auto elliptic = CurveZeta::from_weil(5, 1, {1, -2, 5});
  EXPECT_TRUE(leading_constant_direct(elliptic, target).value.overlaps(leading_constant_zeta_target(elliptic, target).value));
}

TEST(LeadingConstant, KnownValues) {
  const auto c5 = leading_constant_direct(CurveZeta::projective_line(5), q_of(1e-13)).value;
  EXPECT_LT(abs(c5.mid() - q_of(0.21288111056714)), q_of(1e-12));
  for (std::int64_t q : {101, 1009}) {
    const auto v = leading_constant_direct(CurveZeta::projective_line(q), q_of(1e-12)).value.mid();
    EXPECT_LT(abs(v - 1), mpq_class(10, q)) << q;
    EXPECT_LT(v, 1);
  }
}

TEST(LeadingConstant, GoldenAtTwo) {
  std::ifstream in(std::string(DP5_FIXTURE_DIR) + "/golden_counts.json");
  const auto g = nlohmann::json::parse(in);
  const auto& entry = g["constants"][0];
  const auto v = leading_constant_direct(CurveZeta::projective_line(2), q_of(1e-15)).value;
  const mpq_class golden(std::stod(entry["mid"].get<std::string>()));
  EXPECT_LT(abs(v.mid() - golden), mpq_class(std::stod(entry["tolerance"].get<std::string>())));
}

TEST(LeadingConstant, RefinementIsConsistent) {
  const auto c = CurveZeta::projective_line(3);
  const auto coarse = leading_constant_direct(c, q_of(1e-6));
  const auto fine = leading_constant_direct(c, q_of(1e-14));
  EXPECT_LE(coarse.terms, fine.terms);
  EXPECT_LE(fine.value.rad(), coarse.value.rad());
  EXPECT_TRUE(coarse.value.overlaps(fine.value));
  const auto z5 = CurveZeta::projective_line(5);
  const auto k40 = leading_constant_zeta(z5, 40);
  const auto k400 = leading_constant_zeta(z5, 400);
  EXPECT_LT(k400.value.rad(), k40.value.rad());
  EXPECT_TRUE(k40.value.overlaps(k400.value));
}

TEST(LeadingConstant, Errors) {
  EXPECT_EQ(code_of([] { leading_constant_zeta(CurveZeta::projective_line(4), 50); }), ErrorCode::Diverges);
  EXPECT_EQ(code_of([] { leading_constant_zeta_target(CurveZeta::projective_line(2), mpq_class(1, 1000)); }), ErrorCode::Diverges);
  EXPECT_EQ(code_of([] { leading_constant_direct(CurveZeta::projective_line(2), q_of(1e-40)); }), ErrorCode::TargetUnreachable);
}
