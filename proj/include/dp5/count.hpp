#pragma once

// Exact point counts of the torsor-side parameter space M(d) and of the
// morphism space Hom^d(P^1, X)_U over F_q.
//
// count_naive enumerates every 10-tuple of nonzero sections and tests the five
// Plucker relations plus coprimality of the 30 disjoint line pairs.
// count_fast enumerates (a1..a4), solves the two congruence conditions for
// (a13, a24, a34) by linear algebra, and recovers a14, a23, a12 by exact
// division.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dp5/gf.hpp"
#include "dp5/picard.hpp"

namespace dp5::count {

using gf::FieldCtx;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 30;

enum class Method { Naive, Fast };
std::string to_string(Method m);

struct CountOptions {
  unsigned workers = 1;
  /// Relabel into the normalized chamber before counting. The count does not
  /// depend on it; only the running time does.
  bool normalize = true;
  std::uint64_t budget = kDefaultBudget;
};

struct CountResult {
  std::uint32_t q = 0;
  picard::CurveClass cls;
  picard::DegreeData data;  // as counted (after any relabeling)
  Method method = Method::Fast;
  mpz_class m_count;
  mpz_class hom_count;  // m_count / (q-1)^5
  double wall_seconds = 0;
  unsigned workers = 1;
};

/// The 30 unordered pairs of disjoint lines, as line indices.
const std::vector<std::pair<int, int>>& disjoint_pairs();

/// Throws NotInEffDual or BudgetExceeded.
CountResult count_naive(const FieldCtx& ctx, const picard::CurveClass& c, std::uint64_t budget = kDefaultBudget);

/// Throws NotInEffDual, BudgetExceeded, or NonExactDivision.
CountResult count_fast(const FieldCtx& ctx, const picard::CurveClass& c, const CountOptions& opts = {});

struct SweepRow {
  picard::CurveClass cls;
  std::int64_t d = 0;
  std::int64_t d1 = 0;
  mpz_class hom_count;
  std::string ratio;  // hom_count / q^(d+2)
  std::string c_mid;
  std::string c_rad;
  std::string rel_err;  // |ratio - c| / c
};

/// One row per class in input order; the constant is the certified P^1 value.
std::vector<SweepRow> sweep(const FieldCtx& ctx, const std::vector<picard::CurveClass>& classes, const CountOptions& opts);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace dp5::count
