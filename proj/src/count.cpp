#include "dp5/count.hpp"

#include <bit>
#include <chrono>
#include <functional>
#include <ostream>
#include <thread>

#include "dp5/bundles.hpp"
#include "dp5/certified.hpp"
#include "dp5/constants.hpp"
#include "dp5/error.hpp"
#include "dp5/p1.hpp"

namespace dp5::count {

using picard::CurveClass;
using picard::DegreeData;
using picard::kLineCount;

std::string to_string(Method m) { return m == Method::Naive ? "naive" : "fast"; }

const std::vector<std::pair<int, int>>& disjoint_pairs() {
  static const std::vector<std::pair<int, int>> pairs = [] {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < kLineCount; ++a) {
      for (int b = a + 1; b < kLineCount; ++b) {
        if (!picard::lines_meet(a, b)) out.emplace_back(a, b);
      }
    }
    return out;
  }();
  return pairs;
}

namespace {

using Degrees = std::array<int, kLineCount>;

mpz_class big(std::uint64_t v) { return mpz_class(std::to_string(v)); }

void check_budget(const mpz_class& need, std::uint64_t budget, const char* what) {
  if (need > big(budget)) {
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + " " + need.get_str() + " exceeds budget " + std::to_string(budget));
  }
}

DegreeData checked_data(const CurveClass& c) {
  DegreeData data = picard::degree_data(c);
  if (data.min() < 0) throw Error(ErrorCode::NotInEffDual, "class " + c.to_string() + " pairs negatively with a line");
  return data;
}

Degrees to_degrees(const DegreeData& data) {
  Degrees d{};
  for (std::size_t i = 0; i < kLineCount; ++i) d[i] = static_cast<int>(data.by_line[i]);
  return d;
}

mpz_class torus_order(std::uint32_t q) {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), q - 1, 5);
  return t;
}

void finish(CountResult& r) {
  const mpz_class t = torus_order(r.q);
  if (r.m_count % t != 0) {
    throw Error(ErrorCode::InternalAssertion, "torsor count " + r.m_count.get_str() + " not divisible by (q-1)^5");
  }
  r.hom_count = r.m_count / t;
}

// ---------------------------------------------------------------------------
// Naive oracle: general polynomial arithmetic, no structure exploited beyond
// evaluating each predicate as soon as its inputs are assigned.

struct NaiveForm {
  Poly poly;
  int inf = 0;
};

class NaiveSearch {
 public:
  NaiveSearch(const FieldCtx& ctx, const Degrees& deg) : ring_(ctx), deg_(deg) {
    for (std::size_t i = 0; i < kLineCount; ++i) {
      const std::uint64_t n = std::stoull(p1::section_count(ctx.q(), deg[i]).get_str());
      for (std::uint64_t idx = 1; idx < n; ++idx) {
        const auto f = p1::form_from_index(ctx, deg[i], idx);
        forms_[i].push_back({f.dehomogenize(), f.infinity_order()});
      }
    }
    for (const auto& [a, b] : disjoint_pairs()) {
      checks_at_[static_cast<std::size_t>(std::max(a, b))].push_back(std::min(a, b));
    }
  }

  mpz_class run() {
    recurse(0);
    return count_;
  }

 private:
  bool coprime(const NaiveForm& x, const NaiveForm& y) const {
    if (x.inf > 0 && y.inf > 0) return false;
    return ring_.gcd(x.poly, y.poly).degree() == 0;
  }

  const Poly& at(picard::Line l) const { return cur_[static_cast<std::size_t>(l)]->poly; }

  bool relations_hold(int filled) const {
    using namespace picard;
    auto m = [&](Line a, Line b) { return ring_.mul(at(a), at(b)); };
    auto zero = [&](const Poly& x, const Poly& y, const Poly& z) { return ring_.add(ring_.sub(x, y), z).is_zero(); };
    if (filled == L14 && !zero(m(E4, L14), m(E3, L13), m(E2, L12))) return false;
    if (filled == L24 && !zero(m(E4, L24), m(E3, L23), m(E1, L12))) return false;
    if (filled == L34) {
      if (!zero(m(E4, L34), m(E2, L23), m(E1, L13))) return false;
      if (!zero(m(E3, L34), m(E2, L24), m(E1, L14))) return false;
      if (!zero(m(L12, L34), m(L13, L24), m(L23, L14))) return false;
    }
    return true;
  }

  void recurse(int pos) {
    if (pos == kLineCount) {
      ++count_;
      return;
    }
    const auto p = static_cast<std::size_t>(pos);
    for (const auto& f : forms_[p]) {
      cur_[p] = &f;
      bool ok = true;
      for (int other : checks_at_[p]) {
        if (!coprime(f, *cur_[static_cast<std::size_t>(other)])) {
          ok = false;
          break;
        }
      }
      if (ok && relations_hold(pos)) recurse(pos + 1);
    }
  }

  PolyRing ring_;
  Degrees deg_;
  std::array<std::vector<NaiveForm>, kLineCount> forms_;
  std::array<std::vector<int>, kLineCount> checks_at_;
  std::array<const NaiveForm*, kLineCount> cur_{};
  mpz_class count_ = 0;
};

// ---------------------------------------------------------------------------
// Fast kernel. Ops supplies the polynomial representation used in the inner
// loop: bitmasks over F_2, general Poly otherwise.

struct Gf2Ops {
  using P = std::uint64_t;

  static int deg(P a) { return static_cast<int>(std::bit_width(a)) - 1; }

  P from_poly(const Poly& p) const {
    P out = 0;
    for (int i = 0; i <= p.degree(); ++i) out |= P(p.coeff(i) & 1) << i;
    return out;
  }
  P from_index(int d, std::uint64_t index) const {
    // c_0 is the most significant digit of the index.
    P out = 0;
    for (int j = d; j >= 0; --j) {
      out |= P(index & 1) << j;
      index >>= 1;
    }
    return out;
  }
  static bool is_zero(P a) { return a == 0; }
  static P add(P a, P b) { return a ^ b; }
  static P sub(P a, P b) { return a ^ b; }
  static P scaled(P a, Elem c) { return c ? a : 0; }
  static P mul(P a, P b) {
    if (deg(a) > deg(b)) std::swap(a, b);
    P r = 0;
    for (; a; a >>= 1, b <<= 1) {
      if (a & 1) r ^= b;
    }
    return r;
  }
  static P rem(P a, P b) {
    const int db = deg(b);
    for (int da = deg(a); da >= db; da = deg(a)) a ^= b << (da - db);
    return a;
  }
  static bool div_exact(P num, P den, P& quo) {
    const int dd = deg(den);
    quo = 0;
    for (int dn = deg(num); dn >= dd; dn = deg(num)) {
      quo |= P{1} << (dn - dd);
      num ^= den << (dn - dd);
    }
    return num == 0;
  }
  static bool coprime(P a, int fa, P b, int fb) {
    if (deg(a) < fa && deg(b) < fb) return false;
    while (b) {
      a = rem(a, b);
      std::swap(a, b);
    }
    return a == 1;
  }
};

struct GenericOps {
  using P = Poly;
  PolyRing ring;

  P from_poly(const Poly& p) const { return p; }
  P from_index(int d, std::uint64_t index) const { return p1::form_from_index(ring.field(), d, index).dehomogenize(); }
  static bool is_zero(const P& a) { return a.is_zero(); }
  P add(const P& a, const P& b) const { return ring.add(a, b); }
  P sub(const P& a, const P& b) const { return ring.sub(a, b); }
  P scaled(const P& a, Elem c) const { return ring.scale(a, c); }
  P mul(const P& a, const P& b) const { return ring.mul(a, b); }
  bool div_exact(const P& num, const P& den, P& quo) const {
    auto [qt, r] = ring.divmod(num, den);
    quo = std::move(qt);
    return r.is_zero();
  }
  bool coprime(const P& a, int fa, const P& b, int fb) const {
    if (a.degree() < fa && b.degree() < fb) return false;
    return ring.gcd(a, b).degree() == 0;
  }
  static int deg(const P& a) { return a.degree(); }
};

template <class Ops>
class FastKernel {
 public:
  using P = typename Ops::P;

  FastKernel(const FieldCtx& ctx, Ops ops, const Degrees& deg) : ctx_(ctx), ops_(std::move(ops)), deg_(deg) {
    for (int i = 0; i < 4; ++i) sizes_[static_cast<std::size_t>(i)] = std::stoull(p1::section_count(ctx.q(), deg[static_cast<std::size_t>(i)]).get_str());
    // Pairs not involving two of a1..a4, split by whether a14/a23/a12 appear.
    for (const auto& [a, b] : disjoint_pairs()) {
      if (a < 4 && b < 4) continue;
      const bool late = is_derived(a) || is_derived(b);
      (late ? late_pairs_ : early_pairs_).emplace_back(a, b);
    }
  }

  mpz_class run(unsigned worker, unsigned workers) {
    using picard::E1, picard::E2, picard::E3, picard::E4;
    mpz_class total = 0;
    std::uint64_t local = 0;
    for (std::uint64_t i1 = 1; i1 < sizes_[0]; ++i1) {
      if ((i1 - 1) % workers != worker) continue;
      cur_[E1] = ops_.from_index(deg_[E1], i1);
      for (std::uint64_t i2 = 1; i2 < sizes_[1]; ++i2) {
        cur_[E2] = ops_.from_index(deg_[E2], i2);
        if (!cop(E1, E2)) continue;
        for (std::uint64_t i3 = 1; i3 < sizes_[2]; ++i3) {
          cur_[E3] = ops_.from_index(deg_[E3], i3);
          if (!cop(E1, E3) || !cop(E2, E3)) continue;
          for (std::uint64_t i4 = 1; i4 < sizes_[3]; ++i4) {
            cur_[E4] = ops_.from_index(deg_[E4], i4);
            if (!cop(E1, E4) || !cop(E2, E4) || !cop(E3, E4)) continue;
            local += count_fibre({i1, i2, i3, i4});
            if (local > (std::uint64_t{1} << 62)) {
              total += big(local);
              local = 0;
            }
          }
        }
      }
    }
    total += big(local);
    return total;
  }

 private:
  static bool is_derived(int line) { return line == picard::L14 || line == picard::L23 || line == picard::L12; }

  bool cop(int a, int b) const {
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    return ops_.coprime(cur_[ua], deg_[ua], cur_[ub], deg_[ub]);
  }

  bool exact(const P& num, const P& den, int formal, P& out) const {
    if (!ops_.div_exact(num, den, out) || Ops::deg(out) > formal) {
      throw Error(ErrorCode::NonExactDivision, "reconstruction of a derived coordinate is not exact");
    }
    return !Ops::is_zero(out);
  }

  std::uint64_t count_fibre(const std::array<std::uint64_t, 4>& idx) {
    using namespace picard;
    bundles::BundleData data{
        {p1::form_from_index(ctx_, deg_[E1], idx[0]), p1::form_from_index(ctx_, deg_[E2], idx[1]),
         p1::form_from_index(ctx_, deg_[E3], idx[2]), p1::form_from_index(ctx_, deg_[E4], idx[3])},
        {deg_[L13], deg_[L24], deg_[L34]},
        {},
        {}};
    const auto space = bundles::CongruenceBundle::build(std::move(data)).sections(0);
    const std::size_t dim = space.basis.size();
    if (dim == 0) return 0;

    const std::uint32_t q = ctx_.q();
    // multiples[j][c] = c * basis_j, per component.
    std::vector<std::vector<std::array<P, 3>>> multiples(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      std::array<P, 3> b;
      for (std::size_t c = 0; c < 3; ++c) b[c] = ops_.from_poly(space.basis[j][c]);
      multiples[j].resize(q);
      for (Elem c = 0; c < q; ++c) {
        for (std::size_t k = 0; k < 3; ++k) multiples[j][c][k] = ops_.scaled(b[k], c);
      }
    }

    std::vector<Elem> digit(dim, 0);
    std::array<P, 3> sum{};
    for (auto& s : sum) s = ops_.scaled(multiples[0][0][0], 0);
    std::uint64_t hits = 0;
    while (true) {
      cur_[L13] = sum[0];
      cur_[L24] = sum[1];
      cur_[L34] = sum[2];
      if (accept()) ++hits;

      std::size_t j = 0;
      while (j < dim && digit[j] == q - 1) {
        for (std::size_t k = 0; k < 3; ++k) sum[k] = ops_.sub(sum[k], multiples[j][q - 1][k]);
        digit[j] = 0;
        ++j;
      }
      if (j == dim) break;
      for (std::size_t k = 0; k < 3; ++k) {
        sum[k] = ops_.add(ops_.sub(sum[k], multiples[j][digit[j]][k]), multiples[j][digit[j] + 1][k]);
      }
      ++digit[j];
    }
    return hits;
  }

  bool accept() {
    using namespace picard;
    if (Ops::is_zero(cur_[L13]) || Ops::is_zero(cur_[L24]) || Ops::is_zero(cur_[L34])) return false;
    for (const auto& [a, b] : early_pairs_) {
      if (!cop(a, b)) return false;
    }
    const P& a1 = cur_[E1];
    const P& a2 = cur_[E2];
    const P& a3 = cur_[E3];
    const P& a4 = cur_[E4];
    if (!exact(ops_.sub(ops_.mul(a2, cur_[L24]), ops_.mul(a3, cur_[L34])), a1, deg_[L14], cur_[L14])) return false;
    if (!exact(ops_.add(ops_.mul(a4, cur_[L34]), ops_.mul(a1, cur_[L13])), a2, deg_[L23], cur_[L23])) return false;
    if (!exact(ops_.sub(ops_.mul(a3, cur_[L13]), ops_.mul(a4, cur_[L14])), a2, deg_[L12], cur_[L12])) return false;
    for (const auto& [a, b] : late_pairs_) {
      if (!cop(a, b)) return false;
    }
    return true;
  }

  FieldCtx ctx_;
  Ops ops_;
  Degrees deg_;
  std::array<std::uint64_t, 4> sizes_{};
  std::array<P, kLineCount> cur_{};
  std::vector<std::pair<int, int>> early_pairs_;
  std::vector<std::pair<int, int>> late_pairs_;
};

template <class Ops>
mpz_class run_parallel(const FieldCtx& ctx, const Ops& ops, const Degrees& deg, unsigned workers) {
  std::vector<mpz_class> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto job = [&](unsigned w) {
    try {
      FastKernel<Ops> kernel(ctx, ops, deg);
      partial[w] = kernel.run(w, workers);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(job, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  mpz_class total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

CountResult count_naive(const FieldCtx& ctx, const CurveClass& c, std::uint64_t budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const DegreeData data = checked_data(c);
  const Degrees deg = to_degrees(data);
  mpz_class need = 1;
  for (int d : deg) need *= p1::section_count(ctx.q(), d) - 1;
  check_budget(need, budget, "naive search space");

  CountResult r;
  r.q = ctx.q();
  r.cls = c;
  r.data = data;
  r.method = Method::Naive;
  r.m_count = NaiveSearch(ctx, deg).run();
  r.workers = 1;
  finish(r);
  r.wall_seconds = seconds_since(t0);
  return r;
}

CountResult count_fast(const FieldCtx& ctx, const CurveClass& c, const CountOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  DegreeData data = checked_data(c);
  if (opts.normalize) data = picard::chamber_normalize(c).normalized;
  const Degrees deg = to_degrees(data);
  mpz_class need = 1;
  for (int i = 0; i < 4; ++i) need *= p1::section_count(ctx.q(), deg[static_cast<std::size_t>(i)]);
  check_budget(need, opts.budget, "coefficient space of (a1..a4)");

  const unsigned workers = std::max(1u, opts.workers);
  CountResult r;
  r.q = ctx.q();
  r.cls = c;
  r.data = data;
  r.method = Method::Fast;
  r.workers = workers;

  using picard::E1, picard::E2, picard::E3, picard::E4, picard::L12, picard::L13, picard::L14, picard::L23, picard::L24,
      picard::L34;
  const int widest = std::max({deg[E2] + deg[L24], deg[E3] + deg[L34], deg[E4] + deg[L34], deg[E1] + deg[L13],
                               deg[E3] + deg[L13], deg[E4] + deg[L14], deg[E2] + deg[L12]});
  if (ctx.q() == 2 && widest < 63) {
    r.m_count = run_parallel(ctx, Gf2Ops{}, deg, workers);
  } else {
    r.m_count = run_parallel(ctx, GenericOps{PolyRing(ctx)}, deg, workers);
  }
  finish(r);
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::vector<SweepRow> sweep(const FieldCtx& ctx, const std::vector<CurveClass>& classes, const CountOptions& opts) {
  std::vector<SweepRow> rows;
  if (classes.empty()) return rows;
  const auto c =
      constants::leading_constant_direct(constants::CurveZeta::projective_line(ctx.q()), mpq_class(1, 1000000000) * mpq_class(1, 1000000))
          .value;
  const mpq_class c_mid = c.mid();
  for (const auto& cls : classes) {
    const auto res = count_fast(ctx, cls, opts);
    SweepRow row;
    row.cls = cls;
    row.d = res.data.d;
    row.d1 = res.data.min();
    row.hom_count = res.hom_count;
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), ctx.q(), static_cast<unsigned long>(res.data.d + 2));
    const mpq_class ratio(res.hom_count, denom);
    row.ratio = certified::format_decimal(ratio, 17);
    row.c_mid = certified::format_decimal(c_mid, 17);
    row.c_rad = certified::format_decimal(c.rad(), 3);
    row.rel_err = certified::format_decimal(abs(mpq_class(ratio - c_mid)) / c_mid, 6);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "class,d,d1,hom_count,ratio,c_mid,c_rad,rel_err\n";
  for (const auto& r : rows) {
    out << '"' << r.cls.to_string() << "\"," << r.d << ',' << r.d1 << ',' << r.hom_count.get_str() << ',' << r.ratio << ','
        << r.c_mid << ',' << r.c_rad << ',' << r.rel_err << '\n';
  }
}

}  // namespace dp5::count
