#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dp5/count.hpp"
#include "dp5/picard.hpp"
#include "error_code.hpp"
#include "oracles.hpp"

using namespace dp5::count;
using dp5::ErrorCode;
using dp5::picard::CurveClass;
using dp5::picard::parse_class;
using testutil::code_of;

namespace {

CountOptions unnormalized() {
  CountOptions o;
  o.normalize = false;
  return o;
}

/// Classes whose ten line pairings are all 0 or 1.
std::vector<CurveClass> unit_pairing_classes() {
  std::vector<CurveClass> out;
  for (unsigned mask = 0; mask < 1024; ++mask) {
    std::array<std::int64_t, dp5::picard::kLineCount> p{};
    for (int i = 0; i < dp5::picard::kLineCount; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    try {
      out.push_back(dp5::picard::class_from_pairings(p));
    } catch (const dp5::Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InconsistentPairings);
    }
  }
  return out;
}

nlohmann::json golden() {
  std::ifstream in(std::string(DP5_FIXTURE_DIR) + "/golden_counts.json");
  EXPECT_TRUE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Count, ZeroClassMatchesOpenPartPoints) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    const auto f = FieldCtx::of_order(q);
    const auto r = count_fast(f, CurveClass{});
    EXPECT_EQ(r.hom_count, oracle::open_part_points(f)) << "q=" << q;
    EXPECT_EQ(r.hom_count, mpz_class((q - 2) * (q - 3)));
  }
}

TEST(Count, HyperplaneClassMatchesLineCount) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto f = FieldCtx::of_order(q);
    const mpz_class expect = oracle::hyperplane_class_maps(f);
    EXPECT_EQ(count_fast(f, CurveClass::hyperplane()).hom_count, expect) << "q=" << q;
    if (q <= 3) EXPECT_EQ(count_naive(f, CurveClass::hyperplane()).hom_count, expect) << "q=" << q;
  }
}

TEST(Count, NaiveEqualsFastOnUnitPairings) {
  const auto classes = unit_pairing_classes();
  ASSERT_GT(classes.size(), 10u);
  const auto f = FieldCtx::of_order(2);
  for (const auto& c : classes) {
    EXPECT_EQ(count_naive(f, c).m_count, count_fast(f, c).m_count) << c.to_string();
  }
}

TEST(Count, NaiveEqualsFastAtThree) {
  const auto f = FieldCtx::of_order(3);
  for (const char* s : {"1,0,0,0,0", "2,-1,0,0,0", "2,-1,-1,0,0", "3,-1,-1,-1,-1"}) {
    const auto c = parse_class(s);
    EXPECT_EQ(count_naive(f, c).m_count, count_fast(f, c).m_count) << s;
  }
}

TEST(Count, MCountDivisibleByTorusOrder) {
  const std::vector<std::pair<std::uint32_t, const char*>> cases{
      {3, "0,0,0,0,0"},      {3, "1,0,0,0,0"},      {3, "2,-1,0,0,0"},       {3, "2,-1,-1,0,0"},
      {3, "2,-1,-1,-1,0"},   {3, "3,-1,-1,-1,0"},   {3, "3,-1,-1,-1,-1"},    {4, "0,0,0,0,0"},
      {4, "1,0,0,0,0"},      {4, "2,-1,-1,0,0"},    {5, "0,0,0,0,0"},
  };
  for (const auto& [q, s] : cases) {
    const auto f = FieldCtx::of_order(q);
    const auto r = count_fast(f, parse_class(s));
    mpz_class torus = 1;
    for (int i = 0; i < 5; ++i) torus *= q - 1;
    EXPECT_TRUE(mpz_divisible_p(r.m_count.get_mpz_t(), torus.get_mpz_t())) << q << " " << s;
    EXPECT_EQ(r.hom_count * torus, r.m_count);
  }
}

TEST(Count, InvariantUnderSymmetries) {
  const auto f = FieldCtx::of_order(2);
  for (const char* s : {"2,-1,0,0,0", "3,-2,-1,0,0", "3,-2,-1,-1,0", "3,-1,-1,0,0"}) {
    const auto c = parse_class(s);
    const auto base = count_fast(f, c, unnormalized()).hom_count;
    EXPECT_GT(base, 0);
    for (const auto& p : dp5::picard::symmetries()) {
      EXPECT_EQ(count_fast(f, dp5::picard::relabel(c, p), unnormalized()).hom_count, base) << s;
    }
  }
}

TEST(Count, NormalizationDoesNotChangeCount) {
  const auto f = FieldCtx::of_order(3);
  for (const char* s : {"2,0,-1,0,0", "3,0,-1,-1,-1", "2,-1,-1,0,0"}) {
    const auto c = parse_class(s);
    EXPECT_EQ(count_fast(f, c).m_count, count_fast(f, c, unnormalized()).m_count) << s;
  }
}

TEST(Count, WorkerCountDoesNotChangeResult) {
  const auto f = FieldCtx::of_order(3);
  const auto c = parse_class("3,-1,-1,-1,0");
  CountOptions o;
  const auto one = count_fast(f, c, o).m_count;
  for (unsigned w : {2u, 8u}) {
    o.workers = w;
    EXPECT_EQ(count_fast(f, c, o).m_count, one);
  }
}

TEST(Count, Errors) {
  const auto f = FieldCtx::of_order(2);
  EXPECT_EQ(code_of([&] { count_fast(f, CurveClass::exceptional(1)); }), ErrorCode::NotInEffDual);
  EXPECT_EQ(code_of([&] { count_naive(f, CurveClass::exceptional(1)); }), ErrorCode::NotInEffDual);
  EXPECT_EQ(code_of([&] { count_naive(f, CurveClass::anticanonical() * 3); }), ErrorCode::BudgetExceeded);
  CountOptions tiny;
  tiny.budget = 4;
  EXPECT_EQ(code_of([&] { count_fast(f, CurveClass::anticanonical() * 2, tiny); }), ErrorCode::BudgetExceeded);
}

TEST(Count, DisjointPairs) {
  const auto& pairs = disjoint_pairs();
  EXPECT_EQ(pairs.size(), 30u);
  for (const auto& [a, b] : pairs) EXPECT_FALSE(dp5::picard::lines_meet(a, b));
}

TEST(Count, GoldenValues) {
  const auto g = golden();
  for (const auto& entry : g["counts"]) {
    const auto q = entry["q"].get<std::uint32_t>();
    const auto c = parse_class(entry["class"].get<std::string>());
    EXPECT_EQ(count_fast(FieldCtx::of_order(q), c).hom_count, mpz_class(entry["hom_count"].get<std::string>()))
        << entry["command"].get<std::string>();
  }
}

TEST(Sweep, RowsAndCsv) {
  const auto f = FieldCtx::of_order(2);
  const std::vector<CurveClass> classes{CurveClass::anticanonical(), CurveClass::anticanonical() * 2,
                                        CurveClass::anticanonical() * 3};
  const auto rows = sweep(f, classes, {});
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].cls, classes[i]);
    EXPECT_EQ(rows[i].d, 5 * static_cast<std::int64_t>(i + 1));
    EXPECT_EQ(rows[i].d1, static_cast<std::int64_t>(i + 1));
  }
  EXPECT_EQ(rows[2].hom_count, 360);
  EXPECT_EQ(rows[2].ratio, "0.00274658203125");

  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "class,d,d1,hom_count,ratio,c_mid,c_rad,rel_err");
  int n = 0;
  for (std::string line; std::getline(lines, line);) ++n;
  EXPECT_EQ(n, 3);

  std::ostringstream empty;
  write_sweep_csv(empty, sweep(f, {}, {}));
  EXPECT_EQ(empty.str(), header + "\n");
}

TEST(Sweep, ByteIdenticalAcrossWorkers) {
  const auto f = FieldCtx::of_order(2);
  const std::vector<CurveClass> classes{CurveClass::anticanonical() * 3, CurveClass::hyperplane(),
                                        parse_class("3,-2,-1,0,0")};
  std::string first;
  for (unsigned w : {1u, 2u, 8u}) {
    CountOptions o;
    o.workers = w;
    std::ostringstream csv;
    write_sweep_csv(csv, sweep(f, classes, o));
    if (first.empty()) first = csv.str();
    EXPECT_EQ(csv.str(), first) << "workers=" << w;
  }
}
