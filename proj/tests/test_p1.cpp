#include <gtest/gtest.h>

#include <set>
#include <random>

#include "dp5/error.hpp"
#include "dp5/p1.hpp"
#include "dp5/poly.hpp"
#include "oracles.hpp"

using dp5::ErrorCode;
using dp5::Poly;
using dp5::PolyRing;
using dp5::gf::Elem;
using dp5::gf::FieldCtx;
using namespace dp5::p1;

namespace {

Poly random_poly(std::mt19937_64& rng, const FieldCtx& f, int deg) {
  std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = static_cast<Elem>(rng() % f.q());
  c.back() = 1 + static_cast<Elem>(rng() % (f.q() - 1));
  return Poly(c);
}

ClosedPoint finite(std::vector<Elem> c) { return ClosedPoint::finite(Poly(std::move(c))); }

DivisorP1 random_divisor(std::mt19937_64& rng, const std::vector<ClosedPoint>& pts, int max_mult) {
  DivisorP1 d;
  for (const auto& p : pts) {
    const int m = static_cast<int>(rng() % static_cast<unsigned>(max_mult + 1));
    if (m > 0) d = d + DivisorP1::point(p, m);
  }
  return d;
}

std::vector<ClosedPoint> small_points(const FieldCtx& f, int max_deg) {
  std::vector<ClosedPoint> pts{ClosedPoint::infinity()};
  for (int n = 1; n <= max_deg; ++n) {
    for (auto& p : monic_irreducibles(f, n)) pts.push_back(ClosedPoint::finite(std::move(p)));
  }
  return pts;
}

}  // namespace

TEST(Poly, DivisionReconstructs) {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
    const PolyRing r(FieldCtx::of_order(q));
    for (int t = 0; t < 50; ++t) {
      const Poly a = random_poly(rng, r.field(), static_cast<int>(rng() % 9));
      const Poly b = random_poly(rng, r.field(), static_cast<int>(rng() % 5));
      const auto [quo, rem] = r.divmod(a, b);
      EXPECT_EQ(r.add(r.mul(quo, b), rem), a);
      EXPECT_LT(rem.degree(), b.degree());
    }
  }
}

TEST(Poly, DivisionByZeroThrows) {
  const PolyRing r(FieldCtx::of_order(3));
  try {
    r.divmod(r.x(), Poly());
    FAIL();
  } catch (const dp5::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Poly, FactorizationMultipliesBack) {
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 16u}) {
    const PolyRing r(FieldCtx::of_order(q));
    for (int t = 0; t < 30; ++t) {
      Poly a = r.monic(random_poly(rng, r.field(), 1 + static_cast<int>(rng() % 12)));
      if (t % 3 == 0) a = r.mul(a, a);
      Poly product = Poly::constant(1);
      for (const auto& [g, m] : r.factor(a)) {
        EXPECT_TRUE(r.is_irreducible(g));
        EXPECT_EQ(g.lead(), 1u);
        for (int i = 0; i < m; ++i) product = r.mul(product, g);
      }
      EXPECT_EQ(product, a);
    }
  }
}

TEST(Poly, IrreducibleCountsMatchTrialDivision) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto f = FieldCtx::of_order(q);
    for (int n = 1; n <= (q == 2 ? 6 : 4); ++n) {
      EXPECT_EQ(static_cast<std::int64_t>(monic_irreducibles(f, n).size()), oracle::irreducible_count(f, n))
          << "q=" << q << " n=" << n;
    }
  }
}

TEST(BinaryForm, DivisorExamples) {
  const auto f2 = FieldCtx::of_order(2);
  // s*t: c0 = 0, c1 = 1, c2 = 0
  const auto st = divisor_of(BinaryForm(f2, 2, {0, 1, 0}));
  EXPECT_EQ(st.degree(), 2);
  EXPECT_EQ(st.multiplicity(finite({0, 1})), 1);
  EXPECT_EQ(st.infinity_multiplicity(), 1);

  const auto conic = divisor_of(BinaryForm(f2, 2, {1, 1, 1}));
  ASSERT_EQ(conic.entries().size(), 1u);
  EXPECT_EQ(conic.multiplicity(finite({1, 1, 1})), 1);

  // With x = s/t, the form s vanishes at [0:1] = 0 and t at [1:0] = infinity.
  const auto f3 = FieldCtx::of_order(3);
  EXPECT_EQ(divisor_of(BinaryForm(f3, 1, {0, 1})), DivisorP1::point(finite({0, 1})));
  EXPECT_EQ(divisor_of(BinaryForm(f3, 1, {1, 0})), DivisorP1::point(ClosedPoint::infinity()));

  EXPECT_THROW(divisor_of(BinaryForm::zero(f2, 3)), dp5::Error);
}

TEST(BinaryForm, DivisorIsMultiplicative) {
  std::mt19937_64 rng(3);
  const auto f = FieldCtx::of_order(3);
  for (int t = 0; t < 100; ++t) {
    const int da = static_cast<int>(rng() % 5), db = static_cast<int>(rng() % 5);
    const auto a = form_from_index(f, da, 1 + rng() % (section_count(3, da).get_ui() - 1));
    const auto b = form_from_index(f, db, 1 + rng() % (section_count(3, db).get_ui() - 1));
    EXPECT_EQ(divisor_of(a * b), divisor_of(a) + divisor_of(b));
    EXPECT_EQ(divisor_of(a).degree(), da);
  }
}

TEST(Divisor, LatticeExamples) {
  const auto zero = finite({0, 1});
  const auto one = finite({1, 1});
  const DivisorP1 a = DivisorP1::point(zero, 2) + DivisorP1::point(ClosedPoint::infinity());
  const DivisorP1 b = DivisorP1::point(zero) + DivisorP1::point(one);
  EXPECT_EQ(gcd_div(a, b), DivisorP1::point(zero));
  EXPECT_EQ(lcm_div(DivisorP1::point(zero, 2), b), DivisorP1::point(zero, 2) + DivisorP1::point(one));
  EXPECT_TRUE(leq(DivisorP1::point(zero), a));
  EXPECT_FALSE(leq(b, a));
}

TEST(Divisor, GcdPlusLcmIsSum) {
  std::mt19937_64 rng(17);
  const auto pts = small_points(FieldCtx::of_order(3), 2);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_divisor(rng, pts, 2);
    const auto b = random_divisor(rng, pts, 2);
    EXPECT_EQ(gcd_div(a, b) + lcm_div(a, b), a + b);
    EXPECT_TRUE(leq(gcd_div(a, b), a));
    EXPECT_TRUE(leq(b, lcm_div(a, b)));
  }
}

TEST(Divisor, Mobius) {
  const auto zero = finite({0, 1});
  EXPECT_EQ(mobius(DivisorP1()), 1);
  EXPECT_EQ(mobius(DivisorP1::point(zero) + DivisorP1::point(ClosedPoint::infinity())), 1);
  EXPECT_EQ(mobius(DivisorP1::point(zero, 2)), 0);
  EXPECT_EQ(mobius(DivisorP1::point(zero)), -1);
}

TEST(Divisor, MobiusInversion) {
  std::mt19937_64 rng(23);
  const auto pts = small_points(FieldCtx::of_order(2), 3);
  for (int t = 0; t < 100; ++t) {
    auto d = random_divisor(rng, pts, 2);
    if (d.degree() > 6) continue;
    int sum = 0;
    for (const auto& e : subdivisors(d)) sum += mobius(e);
    EXPECT_EQ(sum, d.is_zero() ? 1 : 0);
  }
}

TEST(Census, PointsByDegree) {
  EXPECT_EQ(points_by_degree(2, 1), 3);
  EXPECT_EQ(points_by_degree(2, 2), 1);
  EXPECT_EQ(points_by_degree(2, 3), 2);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto f = FieldCtx::of_order(q);
    for (int n = 2; n <= 4; ++n) EXPECT_EQ(points_by_degree(q, n), oracle::irreducible_count(f, n));
    EXPECT_EQ(points_by_degree(q, 1), oracle::irreducible_count(f, 1) + 1);
  }
}

TEST(Census, DegreeWeightedCountIsFieldSize) {
  for (std::uint64_t q : {2u, 3u, 4u}) {
    for (int n = 1; n <= 6; ++n) {
      mpz_class total = 0;
      for (int m = 1; m <= n; ++m) {
        if (n % m == 0) total += m * (m == 1 ? points_by_degree(q, 1) - 1 : points_by_degree(q, m));
      }
      mpz_class qn;
      mpz_ui_pow_ui(qn.get_mpz_t(), q, static_cast<unsigned long>(n));
      EXPECT_EQ(total, qn);
    }
  }
}

TEST(Sections, StreamSizes) {
  const auto f2 = FieldCtx::of_order(2);
  SectionStream all(f2, 1, false, 1000);
  int n = 0, nonzero = 0;
  while (auto s = all.next()) {
    ++n;
    nonzero += s->is_zero() ? 0 : 1;
  }
  EXPECT_EQ(n, 4);
  EXPECT_EQ(nonzero, 3);
  EXPECT_EQ(SectionStream(FieldCtx::of_order(3), 0, false, 1000).size(), 3u);
  SectionStream cubic(f2, 3, true, 1000);
  int cubic_count = 0;
  while (cubic.next()) ++cubic_count;
  EXPECT_EQ(cubic_count, 15);
  try {
    SectionStream(f2, 20, false, 1000);
    FAIL();
  } catch (const dp5::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Sections, EffectiveDivisorsAreProjectiveSpaces) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto f = FieldCtx::of_order(q);
    for (int d = 0; d <= (q == 4 ? 3 : 4); ++d) {
      SectionStream s(f, d, true, 1u << 20);
      std::set<std::vector<std::pair<std::vector<Elem>, int>>> seen;
      while (auto form = s.next()) {
        std::vector<std::pair<std::vector<Elem>, int>> key;
        const auto div = divisor_of(*form);
        for (const auto& [p, m] : div.entries()) key.emplace_back(p.is_infinity() ? std::vector<Elem>{} : p.poly().coeffs(), m);
        seen.insert(key);
      }
      std::int64_t expect = 0, pw = 1;
      for (int i = 0; i <= d; ++i, pw *= q) expect += pw;
      EXPECT_EQ(static_cast<std::int64_t>(seen.size()), expect) << "q=" << q << " d=" << d;
    }
  }
}
