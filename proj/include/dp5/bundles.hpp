#pragma once

// Rank-3 subsheaves of O(d13) + O(d24) + O(d34) on the projective line cut out
// by divisibility conditions on a triple (a13, a24, a34):
//
//   F13 <= div(a13)   F24 <= div(a24)   F34 <= div(a34)
//   div(a1) + F14 <= div(a3 a34 - a2 a24)
//   div(a2) + F23 <= div(a4 a34 + a1 a13)
//
// with F_ij = lcm(D_i, D_j) + E_k + E_l for {i, j, k, l} = {1, 2, 3, 4}.
// Every condition is linear in the triple, so twisted global sections are the
// kernel of a matrix over F_q.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "dp5/gf.hpp"
#include "dp5/p1.hpp"
#include "dp5/picard.hpp"

namespace dp5::bundles {

using p1::BinaryForm;
using p1::DivisorP1;

struct BundleData {
  std::array<BinaryForm, 4> a;           // a1..a4
  std::array<int, 3> outer;              // (d13, d24, d34)
  std::array<DivisorP1, 4> D;
  std::array<DivisorP1, 4> E;
};

struct SplittingType {
  std::array<int, 3> e{};  // e1 >= e2 >= e3
  int sum() const { return e[0] + e[1] + e[2]; }
  bool operator==(const SplittingType&) const = default;
};

/// A basis of twisted global sections; each vector holds the three
/// components (a13, a24, a34) as polynomials of formal degrees `degrees`.
struct SectionSpace {
  std::array<int, 3> degrees{};
  std::vector<std::array<Poly, 3>> basis;
};

class CongruenceBundle {
 public:
  /// Throws PreconditionViolated naming the failed clause.
  static CongruenceBundle build(BundleData data);

  const BundleData& data() const noexcept { return data_; }
  const FieldCtx& ctx() const noexcept { return data_.a[0].ctx(); }

  /// Anticanonical degree d13 + d3 + d34 + d4 + d24.
  int anticanonical_degree() const;
  /// deg(E1+E2+E3+E4 + [D1;D2;D3] + [D1;D2;D4] + [(D1;D2);D3;D4]).
  int correction_degree() const;

  int h0(int m) const;
  SectionSpace sections(int m) const;
  /// Closed-form degree d - |d'| - b.
  int degree() const;
  /// Recovered from the h0 profile; throws InconsistentH0.
  SplittingType splitting_type() const;

 private:
  struct Condition {
    Poly modulus;              // finite part
    int infinity = 0;          // multiplicity at [1:0]
    std::array<std::optional<BinaryForm>, 3> multiplier;  // per component
  };

  explicit CongruenceBundle(BundleData data);
  gf::Matrix system(int m, std::array<int, 3>& sizes) const;

  BundleData data_;
  std::vector<Condition> conditions_;
};

int h1(const SplittingType& s);

/// Draws a bundle for the normalized degree data with a' uniform among
/// nonzero pairwise-coprime tuples and D, E squarefree of degree <= 2 (or zero
/// when `zero_stratum`). Returns nullopt if no coprime tuple exists.
std::optional<BundleData> sample_bundle(const FieldCtx& ctx, const picard::DegreeData& data, bool zero_stratum,
                                        std::mt19937_64& rng);

struct HnReport {
  std::int64_t samples = 0;
  /// Histogram of 3*e1 - degree (that is, 3*(e1 - slope)).
  std::map<std::int64_t, std::int64_t> e1_excess_thirds;
  std::int64_t h1_positive = 0;
  /// Instances with h1 > 0 but e3 > -2.
  std::int64_t slope_violations = 0;
  /// Instances whose splitting-type sum differs from the closed-form degree.
  std::int64_t degree_mismatches = 0;
  /// Instances with h0 - h1 != degree + 3.
  std::int64_t riemann_roch_mismatches = 0;
  std::int64_t degree_sum = 0;
  std::int64_t splitting_sum = 0;
};

/// Throws NotInEffDual or BudgetExceeded.
HnReport hn_statistics(const FieldCtx& ctx, const picard::CurveClass& c, std::int64_t samples, std::uint64_t seed,
                       bool zero_stratum, std::uint64_t budget);

/// True iff the two nonzero forms share no point of P^1.
bool coprime(const BinaryForm& f, const BinaryForm& g);

/// True iff div(f) >= Z for a nonzero form f.
bool vanishes_on(const BinaryForm& f, const DivisorP1& z);

}  // namespace dp5::bundles
