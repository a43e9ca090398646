#include "dp5/picard.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "dp5/error.hpp"

namespace dp5::picard {

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

// Index set {i, j} of a line L_ij, or {i, 0} for E_i.
std::array<int, 2> indices(int line) {
  if (line < 4) return {line + 1, 0};
  return kPairs[static_cast<std::size_t>(line - 4)];
}

std::array<std::array<bool, kLineCount>, kLineCount> meet_table() {
  std::array<std::array<bool, kLineCount>, kLineCount> t{};
  for (int a = 0; a < kLineCount; ++a) {
    for (int b = 0; b < kLineCount; ++b) {
      if (a == b) continue;
      const auto ia = indices(a);
      const auto ib = indices(b);
      bool meet = false;
      if (a < 4 && b < 4) {
        meet = false;
      } else if (a < 4) {
        meet = ia[0] == ib[0] || ia[0] == ib[1];
      } else if (b < 4) {
        meet = ib[0] == ia[0] || ib[0] == ia[1];
      } else {
        meet = ia[0] != ib[0] && ia[0] != ib[1] && ia[1] != ib[0] && ia[1] != ib[1];
      }
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = meet;
    }
  }
  return t;
}

const auto& meets() {
  static const auto t = meet_table();
  return t;
}

void extend(Permutation& perm, std::array<bool, kLineCount>& used, int pos, std::vector<Permutation>& out) {
  if (pos == kLineCount) {
    out.push_back(perm);
    return;
  }
  const auto& t = meets();
  for (int img = 0; img < kLineCount; ++img) {
    if (used[static_cast<std::size_t>(img)]) continue;
    bool ok = true;
    for (int prev = 0; prev < pos && ok; ++prev) {
      ok = t[static_cast<std::size_t>(pos)][static_cast<std::size_t>(prev)] ==
           t[static_cast<std::size_t>(img)][static_cast<std::size_t>(perm[static_cast<std::size_t>(prev)])];
    }
    if (!ok) continue;
    used[static_cast<std::size_t>(img)] = true;
    perm[static_cast<std::size_t>(pos)] = img;
    extend(perm, used, pos + 1, out);
    used[static_cast<std::size_t>(img)] = false;
  }
}

}  // namespace

int pair_line(int i, int j) {
  if (i > j) std::swap(i, j);
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    if (kPairs[k][0] == i && kPairs[k][1] == j) return 4 + static_cast<int>(k);
  }
  throw Error(ErrorCode::PreconditionViolated, "no line L_ij for the given indices");
}

std::string_view line_name(int line) {
  static constexpr std::array<std::string_view, kLineCount> names{"E1",  "E2",  "E3",  "E4",  "L12",
                                                                  "L13", "L14", "L23", "L24", "L34"};
  return names.at(static_cast<std::size_t>(line));
}

bool lines_meet(int a, int b) {
  return a != b && meets()[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

CurveClass CurveClass::exceptional(int i) {
  CurveClass c;
  c.coeffs[static_cast<std::size_t>(i)] = 1;
  return c;
}

CurveClass CurveClass::line(int index) {
  if (index < 4) return exceptional(index + 1);
  const auto ij = indices(index);
  return hyperplane() - exceptional(ij[0]) - exceptional(ij[1]);
}

CurveClass CurveClass::operator+(const CurveClass& o) const {
  CurveClass r;
  for (std::size_t i = 0; i < 5; ++i) r.coeffs[i] = coeffs[i] + o.coeffs[i];
  return r;
}

CurveClass CurveClass::operator-(const CurveClass& o) const { return *this + o * -1; }

CurveClass CurveClass::operator*(std::int64_t k) const {
  CurveClass r;
  for (std::size_t i = 0; i < 5; ++i) r.coeffs[i] = coeffs[i] * k;
  return r;
}

std::string CurveClass::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs[i]);
  }
  return out;
}

std::int64_t pairing(const CurveClass& a, const CurveClass& b) {
  std::int64_t s = a.coeffs[0] * b.coeffs[0];
  for (std::size_t i = 1; i < 5; ++i) s -= a.coeffs[i] * b.coeffs[i];
  return s;
}

std::int64_t DegreeData::min() const { return *std::min_element(by_line.begin(), by_line.end()); }

DegreeData degree_data(const CurveClass& c) {
  DegreeData out;
  for (int l = 0; l < kLineCount; ++l) out.by_line[static_cast<std::size_t>(l)] = pairing(c, CurveClass::line(l));
  out.d = pairing(c, CurveClass::anticanonical());
  // Pentagon L_ij + E_i + L_ik + E_k + L_kl = -K for {i,j,k,l} = {1,2,3,4}.
  std::array<int, 4> p{1, 2, 3, 4};
  do {
    const auto [i, j, k, l] = p;
    const std::int64_t s = out.l(i, j) + out.e(i) + out.l(i, k) + out.e(k) + out.l(k, l);
    if (s != out.d) throw Error(ErrorCode::InternalAssertion, "pentagon sum disagrees with anticanonical degree");
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool in_eff_dual(const CurveClass& c) { return degree_data(c).min() >= 0; }

CurveClass class_from_pairings(const std::array<std::int64_t, kLineCount>& d) {
  CurveClass c;
  for (std::size_t i = 0; i < 4; ++i) c.coeffs[i + 1] = -d[i];
  c.coeffs[0] = d[static_cast<std::size_t>(L12)] + d[0] + d[1];
  if (degree_data(c).by_line != d) {
    throw Error(ErrorCode::InconsistentPairings, "pairings do not come from a class");
  }
  return c;
}

const std::vector<Permutation>& symmetries() {
  static const std::vector<Permutation> all = [] {
    std::vector<Permutation> out;
    Permutation perm{};
    std::array<bool, kLineCount> used{};
    extend(perm, used, 0, out);
    std::sort(out.begin(), out.end());
    return out;
  }();
  return all;
}

DegreeData relabel(const DegreeData& data, const Permutation& perm) {
  DegreeData out;
  out.d = data.d;
  for (std::size_t x = 0; x < kLineCount; ++x) out.by_line[x] = data.by_line[static_cast<std::size_t>(perm[x])];
  return out;
}

CurveClass relabel(const CurveClass& c, const Permutation& perm) {
  return class_from_pairings(relabel(degree_data(c), perm).by_line);
}

bool is_normalized(const DegreeData& x) {
  const std::int64_t d1 = x.e(1), d2 = x.e(2), d3 = x.e(3), d4 = x.e(4);
  if (!(d1 <= d2 && d2 <= d3 && d3 <= d4 && d2 <= x.l(3, 4))) return false;
  if (d1 != x.min()) return false;
  const std::int64_t off_e1 = std::min({x.e(2), x.e(3), x.e(4), x.l(2, 3), x.l(2, 4), x.l(3, 4)});
  return d2 == off_e1;
}

Chamber chamber_normalize(const CurveClass& c) {
  const DegreeData data = degree_data(c);
  if (data.min() < 0) throw Error(ErrorCode::NotInEffDual, "class " + c.to_string() + " pairs negatively with a line");
  const auto& syms = symmetries();
  for (std::size_t id = 0; id < syms.size(); ++id) {
    DegreeData candidate = relabel(data, syms[id]);
    if (is_normalized(candidate)) return Chamber{static_cast<int>(id), syms[id], candidate};
  }
  throw Error(ErrorCode::InternalAssertion, "no chamber contains the class");
}

std::int64_t boundary_distance(const CurveClass& c) {
  const DegreeData data = degree_data(c);
  if (data.min() < 0) throw Error(ErrorCode::NotInEffDual, "class " + c.to_string() + " pairs negatively with a line");
  return data.min();
}

namespace {

std::vector<std::int64_t> parse_ints(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (tok.empty() || ec != std::errc{} || ptr != last) {
      throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

CurveClass parse_class(std::string_view text) {
  constexpr std::string_view prefix = "pairings=";
  if (text.starts_with(prefix)) {
    const auto v = parse_ints(text.substr(prefix.size()));
    if (v.size() != kLineCount) throw Error(ErrorCode::ParseError, "expected 10 pairings");
    std::array<std::int64_t, kLineCount> d{};
    std::copy(v.begin(), v.end(), d.begin());
    return class_from_pairings(d);
  }
  const auto v = parse_ints(text);
  if (v.size() != 5) throw Error(ErrorCode::ParseError, "expected 5 comma-separated integers, got " + std::to_string(v.size()));
  CurveClass c;
  std::copy(v.begin(), v.end(), c.coeffs.begin());
  return c;
}

}  // namespace dp5::picard
