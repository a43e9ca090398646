#pragma once

// The Picard lattice of the quintic del Pezzo surface obtained by blowing up
// four points of the plane, in the basis (H, E1, E2, E3, E4) with pairing
// diag(1, -1, -1, -1, -1).
//
// The ten lines are indexed 0..9 in the order
//   E1 E2 E3 E4 L12 L13 L14 L23 L24 L34,    L_ij = H - E_i - E_j.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dp5::picard {

inline constexpr int kLineCount = 10;

enum Line : int { E1, E2, E3, E4, L12, L13, L14, L23, L24, L34 };

/// Line index of L_ij for i != j in 1..4, order-insensitive.
int pair_line(int i, int j);
std::string_view line_name(int line);

using Permutation = std::array<int, kLineCount>;

struct CurveClass {
  std::array<std::int64_t, 5> coeffs{};  // (a, c1, c2, c3, c4)

  static CurveClass anticanonical() { return {{3, -1, -1, -1, -1}}; }
  static CurveClass hyperplane() { return {{1, 0, 0, 0, 0}}; }
  static CurveClass exceptional(int i);  // E_i, i in 1..4
  static CurveClass line(int index);

  CurveClass operator+(const CurveClass& o) const;
  CurveClass operator-(const CurveClass& o) const;
  CurveClass operator*(std::int64_t k) const;
  bool operator==(const CurveClass&) const = default;

  std::string to_string() const;  // "a,c1,c2,c3,c4"
};

std::int64_t pairing(const CurveClass& a, const CurveClass& b);

/// Pairings with the ten lines plus the anticanonical degree.
struct DegreeData {
  std::array<std::int64_t, kLineCount> by_line{};
  std::int64_t d = 0;

  std::int64_t at(Line l) const { return by_line[static_cast<std::size_t>(l)]; }
  std::int64_t e(int i) const { return by_line[static_cast<std::size_t>(i - 1)]; }
  std::int64_t l(int i, int j) const { return by_line[static_cast<std::size_t>(pair_line(i, j))]; }
  std::int64_t min() const;
  bool operator==(const DegreeData&) const = default;
};

/// Throws InternalAssertion if the pentagon sums disagree with the
/// anticanonical pairing.
DegreeData degree_data(const CurveClass& c);
bool in_eff_dual(const CurveClass& c);

/// Inverse of degree_data on its image; throws InconsistentPairings.
CurveClass class_from_pairings(const std::array<std::int64_t, kLineCount>& pairings);

/// The 120 automorphisms of the line configuration, identity first, in
/// lexicographic order of their image arrays.
const std::vector<Permutation>& symmetries();

/// Relabeled data with by_line[x] = data.by_line[perm[x]].
DegreeData relabel(const DegreeData& data, const Permutation& perm);
CurveClass relabel(const CurveClass& c, const Permutation& perm);

/// True iff d1<=d2<=d3<=d4, d2<=d34, d1 is the minimum over all lines and d2
/// the minimum over the six lines disjoint from E1.
bool is_normalized(const DegreeData& data);

struct Chamber {
  int id = 0;  // index into symmetries()
  Permutation relabeling{};
  DegreeData normalized;
};

/// First chamber (in symmetries() order) whose relabeling is normalized.
/// Throws NotInEffDual.
Chamber chamber_normalize(const CurveClass& c);

/// Minimum line pairing. Throws NotInEffDual.
std::int64_t boundary_distance(const CurveClass& c);

/// Accepts "a,c1,c2,c3,c4" or "pairings=d1,d2,d3,d4,d12,d13,d14,d23,d24,d34".
/// Throws ParseError or InconsistentPairings.
CurveClass parse_class(std::string_view text);

/// Whether two distinct lines meet.
bool lines_meet(int a, int b);

}  // namespace dp5::picard
