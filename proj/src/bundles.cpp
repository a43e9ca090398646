#include "dp5/bundles.hpp"

#include <algorithm>
#include <string>

#include "dp5/error.hpp"

namespace dp5::bundles {

namespace {

using p1::ClosedPoint;

void require(bool ok, const std::string& clause) {
  if (!ok) throw Error(ErrorCode::PreconditionViolated, clause);
}

std::string idx(int i) { return std::to_string(i + 1); }

bool point_divides(const PolyRing& ring, const ClosedPoint& p, const BinaryForm& f) {
  if (p.is_infinity()) return f.infinity_order() > 0;
  return ring.divides(p.poly(), f.dehomogenize());
}

}  // namespace

bool coprime(const BinaryForm& f, const BinaryForm& g) {
  if (f.infinity_order() > 0 && g.infinity_order() > 0) return false;
  const PolyRing ring(f.ctx());
  return ring.gcd(f.dehomogenize(), g.dehomogenize()).degree() == 0;
}

bool vanishes_on(const BinaryForm& f, const DivisorP1& z) {
  if (z.infinity_multiplicity() > f.infinity_order()) return false;
  const PolyRing ring(f.ctx());
  return ring.divides(z.finite_modulus(ring), f.dehomogenize());
}

CongruenceBundle::CongruenceBundle(BundleData data) : data_(std::move(data)) {}

CongruenceBundle CongruenceBundle::build(BundleData data) {
  const auto& a = data.a;
  const auto& D = data.D;
  const auto& E = data.E;
  const FieldCtx& ctx = a[0].ctx();
  const PolyRing ring(ctx);

  for (int i = 0; i < 4; ++i) require(!a[static_cast<std::size_t>(i)].is_zero(), "a" + idx(i) + " is nonzero");
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      require(coprime(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]),
              "(div(a" + idx(i) + ");div(a" + idx(j) + ")) = 0");
    }
  }
  const int d1 = a[0].degree(), d2 = a[1].degree(), d3 = a[2].degree(), d4 = a[3].degree();
  const auto [d13, d24, d34] = data.outer;
  require(d13 >= 0 && d24 >= 0 && d34 >= 0, "outer degrees are nonnegative");
  require(d3 + d34 == d2 + d24, "d3 + d34 = d2 + d24");
  require(d4 + d34 == d1 + d13, "d4 + d34 = d1 + d13");

  std::vector<const DivisorP1*> all;
  for (const auto& x : D) all.push_back(&x);
  for (const auto& x : E) all.push_back(&x);
  for (std::size_t i = 0; i < all.size(); ++i) {
    require(all[i]->is_squarefree(), "D and E are squarefree");
    for (std::size_t j = i + 1; j < all.size(); ++j) require(p1::disjoint(*all[i], *all[j]), "D and E have disjoint supports");
  }
  for (int i = 0; i < 4; ++i) {
    require(vanishes_on(a[static_cast<std::size_t>(i)], E[static_cast<std::size_t>(i)]), "E" + idx(i) + " <= div(a" + idx(i) + ")");
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      for (const auto& [p, m] : D[static_cast<std::size_t>(i)].entries()) {
        require(!point_divides(ring, p, a[static_cast<std::size_t>(j)]), "(D" + idx(i) + ";div(a" + idx(j) + ")) = 0");
      }
    }
  }

  CongruenceBundle b(std::move(data));
  const auto& bd = b.data_;
  auto F = [&](int i, int j) {
    int k = 0, l = 0;
    for (int t = 1; t <= 4; ++t) {
      if (t == i || t == j) continue;
      (k == 0 ? k : l) = t;
    }
    return p1::lcm_div(bd.D[static_cast<std::size_t>(i - 1)], bd.D[static_cast<std::size_t>(j - 1)]) +
           bd.E[static_cast<std::size_t>(k - 1)] + bd.E[static_cast<std::size_t>(l - 1)];
  };
  const BinaryForm unit = BinaryForm::from_poly(ctx, 0, Poly::constant(1));

  // Components: 0 = a13, 1 = a24, 2 = a34.
  const std::array<std::pair<int, int>, 3> own{{{1, 3}, {2, 4}, {3, 4}}};
  for (std::size_t c = 0; c < 3; ++c) {
    const DivisorP1 f = F(own[c].first, own[c].second);
    Condition cond{f.finite_modulus(ring), f.infinity_multiplicity(), {}};
    cond.multiplier[c] = unit;
    b.conditions_.push_back(std::move(cond));
  }
  {
    const DivisorP1 f = F(1, 4);
    Condition cond{ring.mul(bd.a[0].dehomogenize(), f.finite_modulus(ring)),
                   bd.a[0].infinity_order() + f.infinity_multiplicity(),
                   {}};
    const BinaryForm& a2 = bd.a[1];
    cond.multiplier[1] = BinaryForm::from_poly(ctx, a2.degree(), ring.neg(a2.dehomogenize()));
    cond.multiplier[2] = bd.a[2];
    b.conditions_.push_back(std::move(cond));
  }
  {
    const DivisorP1 f = F(2, 3);
    Condition cond{ring.mul(bd.a[1].dehomogenize(), f.finite_modulus(ring)),
                   bd.a[1].infinity_order() + f.infinity_multiplicity(),
                   {}};
    cond.multiplier[0] = bd.a[0];
    cond.multiplier[2] = bd.a[3];
    b.conditions_.push_back(std::move(cond));
  }
  return b;
}

int CongruenceBundle::anticanonical_degree() const {
  const auto [d13, d24, d34] = data_.outer;
  return d13 + data_.a[2].degree() + d34 + data_.a[3].degree() + d24;
}

int CongruenceBundle::correction_degree() const {
  const auto& D = data_.D;
  int b = 0;
  for (const auto& e : data_.E) b += e.degree();
  b += p1::lcm_div(p1::lcm_div(D[0], D[1]), D[2]).degree();
  b += p1::lcm_div(p1::lcm_div(D[0], D[1]), D[3]).degree();
  b += p1::lcm_div(p1::lcm_div(p1::gcd_div(D[0], D[1]), D[2]), D[3]).degree();
  return b;
}

int CongruenceBundle::degree() const {
  int dprime = 0;
  for (const auto& a : data_.a) dprime += a.degree();
  return anticanonical_degree() - dprime - correction_degree();
}

gf::Matrix CongruenceBundle::system(int m, std::array<int, 3>& sizes) const {
  const FieldCtx& f = ctx();
  const PolyRing ring(f);
  std::array<int, 3> offset{};
  int cols = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    sizes[c] = std::max(0, data_.outer[c] + m + 1);
    offset[c] = cols;
    cols += sizes[c];
  }

  std::vector<std::vector<Elem>> rows;
  for (const auto& cond : conditions_) {
    // Formal degree of the combined form.
    int target = -1;
    for (std::size_t c = 0; c < 3; ++c) {
      if (cond.multiplier[c]) target = cond.multiplier[c]->degree() + data_.outer[c] + m;
    }
    if (target < 0) continue;
    const int nmod = cond.modulus.degree();
    const int ninf = std::min(cond.infinity, target + 1);
    std::vector<std::vector<Elem>> block(static_cast<std::size_t>(nmod + ninf), std::vector<Elem>(static_cast<std::size_t>(cols), 0));
    for (std::size_t c = 0; c < 3; ++c) {
      if (!cond.multiplier[c]) continue;
      const Poly& mult = cond.multiplier[c]->dehomogenize();
      for (int j = 0; j < sizes[c]; ++j) {
        const Poly contrib = ring.mul(mult, Poly::monomial(1, j));
        const Poly rem = ring.mod(contrib, cond.modulus);
        const int col = offset[c] + j;
        for (int r = 0; r < nmod; ++r) block[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = rem.coeff(r);
        for (int i = 0; i < ninf; ++i) {
          block[static_cast<std::size_t>(nmod + i)][static_cast<std::size_t>(col)] = contrib.coeff(target - i);
        }
      }
    }
    for (auto& row : block) rows.push_back(std::move(row));
  }

  gf::Matrix mat(rows.size(), static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(cols); ++c) mat.at(r, c) = rows[r][c];
  }
  return mat;
}

int CongruenceBundle::h0(int m) const {
  std::array<int, 3> sizes{};
  gf::Matrix mat = system(m, sizes);
  return static_cast<int>(mat.cols() - gf::rank(ctx(), std::move(mat)));
}

SectionSpace CongruenceBundle::sections(int m) const {
  std::array<int, 3> sizes{};
  gf::Matrix mat = system(m, sizes);
  SectionSpace out;
  for (std::size_t c = 0; c < 3; ++c) out.degrees[c] = data_.outer[c] + m;
  for (const auto& v : gf::nullspace(ctx(), std::move(mat))) {
    std::array<Poly, 3> triple;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      std::vector<Elem> coeffs(v.begin() + static_cast<std::ptrdiff_t>(pos),
                               v.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(sizes[c])));
      triple[c] = Poly(std::move(coeffs));
      pos += static_cast<std::size_t>(sizes[c]);
    }
    out.basis.push_back(std::move(triple));
  }
  return out;
}

SplittingType CongruenceBundle::splitting_type() const {
  const int top = *std::max_element(data_.outer.begin(), data_.outer.end());
  int cond_degree = 0;
  for (const auto& c : conditions_) cond_degree += c.modulus.degree() + c.infinity;
  const int m0 = -top - 2;
  const int m_end = m0 + top + cond_degree + 8;

  std::vector<int> h;
  for (int m = m0; m <= m_end; ++m) h.push_back(h0(m));
  if (h.front() != 0) throw Error(ErrorCode::InconsistentH0, "sections at a twist below every summand");

  std::array<int, 3> first{};  // first twist with at least k+1 new sections
  std::array<bool, 3> seen{};
  for (std::size_t i = 1; i < h.size(); ++i) {
    const int delta = h[i] - h[i - 1];
    if (delta < 0 || delta > 3) throw Error(ErrorCode::InconsistentH0, "first difference outside 0..3");
    for (int k = 0; k < delta; ++k) {
      if (!seen[static_cast<std::size_t>(k)]) {
        seen[static_cast<std::size_t>(k)] = true;
        first[static_cast<std::size_t>(k)] = m0 + static_cast<int>(i);
      }
    }
  }
  if (!seen[2]) throw Error(ErrorCode::InconsistentH0, "profile never reaches rank 3");
  SplittingType s{{-first[0], -first[1], -first[2]}};
  for (std::size_t i = 0; i < h.size(); ++i) {
    const int m = m0 + static_cast<int>(i);
    int expect = 0;
    for (int e : s.e) expect += std::max(0, e + m + 1);
    if (expect != h[i]) throw Error(ErrorCode::InconsistentH0, "no splitting type reproduces h0 at twist " + std::to_string(m));
  }
  return s;
}

int h1(const SplittingType& s) {
  int out = 0;
  for (int e : s.e) out += std::max(0, -e - 1);
  return out;
}

namespace {

std::uint64_t power(std::uint64_t q, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= q;
  return r;
}

BinaryForm random_form(const FieldCtx& ctx, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(1, power(ctx.q(), d + 1) - 1);
  return p1::form_from_index(ctx, d, pick(rng));
}

bool pairwise_coprime(const std::array<BinaryForm, 4>& a) {
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!coprime(a[i], a[j])) return false;
    }
  }
  return true;
}

std::vector<ClosedPoint> small_points(const FieldCtx& ctx) {
  std::vector<ClosedPoint> out{ClosedPoint::infinity()};
  for (int n = 1; n <= 2; ++n) {
    for (auto& p : p1::monic_irreducibles(ctx, n)) out.push_back(ClosedPoint::finite(std::move(p)));
  }
  return out;
}

template <class T>
const T& choose(const std::vector<T>& v, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  return v[pick(rng)];
}

}  // namespace

std::optional<BundleData> sample_bundle(const FieldCtx& ctx, const picard::DegreeData& dd, bool zero_stratum,
                                        std::mt19937_64& rng) {
  std::array<int, 4> deg{};
  for (int i = 0; i < 4; ++i) deg[static_cast<std::size_t>(i)] = static_cast<int>(dd.e(i + 1));
  const std::array<int, 3> outer{static_cast<int>(dd.l(1, 3)), static_cast<int>(dd.l(2, 4)), static_cast<int>(dd.l(3, 4))};

  std::uint64_t space = 1;
  for (int d : deg) space *= power(ctx.q(), d + 1) - 1;

  std::optional<std::array<BinaryForm, 4>> a;
  auto draw = [&] {
    return std::array<BinaryForm, 4>{random_form(ctx, deg[0], rng), random_form(ctx, deg[1], rng),
                                     random_form(ctx, deg[2], rng), random_form(ctx, deg[3], rng)};
  };
  if (space <= (1u << 16)) {
    // Small spaces: uniform over the explicit list, which may be empty.
    std::vector<std::array<std::uint64_t, 4>> valid;
    std::array<std::uint64_t, 4> sizes{};
    for (std::size_t i = 0; i < 4; ++i) sizes[i] = power(ctx.q(), deg[i] + 1);
    for (std::uint64_t i0 = 1; i0 < sizes[0]; ++i0) {
      const auto f0 = p1::form_from_index(ctx, deg[0], i0);
      for (std::uint64_t i1 = 1; i1 < sizes[1]; ++i1) {
        const auto f1 = p1::form_from_index(ctx, deg[1], i1);
        if (!coprime(f0, f1)) continue;
        for (std::uint64_t i2 = 1; i2 < sizes[2]; ++i2) {
          const auto f2 = p1::form_from_index(ctx, deg[2], i2);
          if (!coprime(f0, f2) || !coprime(f1, f2)) continue;
          for (std::uint64_t i3 = 1; i3 < sizes[3]; ++i3) {
            const auto f3 = p1::form_from_index(ctx, deg[3], i3);
            if (coprime(f0, f3) && coprime(f1, f3) && coprime(f2, f3)) valid.push_back({i0, i1, i2, i3});
          }
        }
      }
    }
    if (valid.empty()) return std::nullopt;
    const auto& pick = choose(valid, rng);
    a = std::array<BinaryForm, 4>{p1::form_from_index(ctx, deg[0], pick[0]), p1::form_from_index(ctx, deg[1], pick[1]),
                                  p1::form_from_index(ctx, deg[2], pick[2]), p1::form_from_index(ctx, deg[3], pick[3])};
  } else {
    for (int attempt = 0; attempt < 100000 && !a; ++attempt) {
      auto cand = draw();
      if (pairwise_coprime(cand)) a = std::move(cand);
    }
    if (!a) return std::nullopt;
  }

  BundleData out{*a, outer, {}, {}};
  if (zero_stratum) return out;

  std::array<DivisorP1, 4> div;
  for (std::size_t i = 0; i < 4; ++i) div[i] = p1::divisor_of(out.a[i]);
  std::vector<ClosedPoint> used;
  auto is_used = [&](const ClosedPoint& p) { return std::find(used.begin(), used.end(), p) != used.end(); };

  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<DivisorP1> options;
    DivisorP1::Map radical;
    for (const auto& [p, m] : div[i].entries()) radical.emplace(p, 1);
    for (auto& s : p1::subdivisors(DivisorP1(radical))) {
      if (s.degree() <= 2) options.push_back(std::move(s));
    }
    out.E[i] = choose(options, rng);
    for (const auto& [p, m] : out.E[i].entries()) used.push_back(p);
  }

  const auto points = small_points(ctx);
  for (std::size_t i = 0; i < 4; ++i) {
    if (coin(rng) == 0) continue;
    std::vector<ClosedPoint> allowed;
    for (const auto& p : points) {
      if (is_used(p)) continue;
      bool hits_other = false;
      for (std::size_t j = 0; j < 4 && !hits_other; ++j) hits_other = j != i && div[j].multiplicity(p) > 0;
      if (!hits_other) allowed.push_back(p);
    }
    if (allowed.empty()) continue;
    const ClosedPoint first = choose(allowed, rng);
    DivisorP1 d = DivisorP1::point(first);
    used.push_back(first);
    if (first.degree() == 1 && coin(rng) == 1) {
      std::vector<ClosedPoint> linear;
      for (const auto& p : allowed) {
        if (p.degree() == 1 && !is_used(p)) linear.push_back(p);
      }
      if (!linear.empty()) {
        const ClosedPoint second = choose(linear, rng);
        d = d + DivisorP1::point(second);
        used.push_back(second);
      }
    }
    out.D[i] = std::move(d);
  }
  return out;
}

HnReport hn_statistics(const FieldCtx& ctx, const picard::CurveClass& c, std::int64_t samples, std::uint64_t seed,
                       bool zero_stratum, std::uint64_t budget) {
  const auto chamber = picard::chamber_normalize(c);
  const auto& dd = chamber.normalized;
  mpz_class space = 1;
  for (int i = 1; i <= 4; ++i) space *= p1::section_count(ctx.q(), static_cast<int>(dd.e(i)));
  if (space > mpz_class(std::to_string(budget))) {
    throw Error(ErrorCode::BudgetExceeded, "coefficient space " + space.get_str() + " exceeds budget");
  }

  HnReport report;
  std::mt19937_64 rng(seed);
  for (std::int64_t s = 0; s < samples; ++s) {
    auto data = sample_bundle(ctx, dd, zero_stratum, rng);
    if (!data) break;
    const auto bundle = CongruenceBundle::build(std::move(*data));
    const auto split = bundle.splitting_type();
    const int deg = bundle.degree();
    ++report.samples;
    ++report.e1_excess_thirds[3 * split.e[0] - deg];
    const int h1_value = h1(split);
    if (h1_value > 0) ++report.h1_positive;
    if (h1_value > 0 && split.e[2] > -2) ++report.slope_violations;
    if (split.sum() != deg) ++report.degree_mismatches;
    if (bundle.h0(0) - h1_value != deg + 3) ++report.riemann_roch_mismatches;
    report.degree_sum += deg;
    report.splitting_sum += split.sum();
  }
  return report;
}

}  // namespace dp5::bundles
