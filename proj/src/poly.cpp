#include "dp5/poly.hpp"

#include <algorithm>

#include "dp5/error.hpp"

namespace dp5 {

namespace {

void trim(std::vector<Elem>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint64_t next_random(std::uint64_t& state) {
  // splitmix64
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Poly::Poly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(c_); }

Poly Poly::monomial(Elem c, int k) {
  std::vector<Elem> v(static_cast<std::size_t>(k) + 1, 0);
  v.back() = c;
  return Poly(std::move(v));
}

std::strong_ordering Poly::operator<=>(const Poly& other) const {
  if (auto cmp = degree() <=> other.degree(); cmp != 0) return cmp;
  return std::lexicographical_compare_three_way(c_.begin(), c_.end(), other.c_.begin(), other.c_.end());
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> out(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Elem u = i < x.size() ? x[i] : 0;
    const Elem v = i < y.size() ? y[i] : 0;
    out[i] = f_.add(u, v);
  }
  return Poly(std::move(out));
}

Poly PolyRing::neg(const Poly& a) const {
  std::vector<Elem> out(a.coeffs());
  for (auto& c : out) c = f_.neg(c);
  return Poly(std::move(out));
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::scale(const Poly& a, Elem s) const {
  std::vector<Elem> out(a.coeffs());
  for (auto& c : out) c = f_.mul(c, s);
  return Poly(std::move(out));
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      out[i + j] = f_.add(out[i + j], f_.mul(x[i], y[j]));
    }
  }
  return Poly(std::move(out));
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Elem> r(a.coeffs());
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const Elem lead_inv = f_.inv(d.back());
  std::vector<Elem> quot(r.size() - db, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    const Elem c = f_.mul(r[k], lead_inv);
    quot[k - db] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) {
      r[k - db + i] = f_.sub(r[k - db + i], f_.mul(c, d[i]));
    }
  }
  r.resize(db);
  return {Poly(std::move(quot)), Poly(std::move(r))};
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  return scale(a, f_.inv(a.lead()));
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly PolyRing::powmod(const Poly& base, const mpz_class& exponent, const Poly& m) const {
  Poly result = mod(Poly::constant(1), m);
  Poly b = mod(base, m);
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result), m);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = mod(mul(result, b), m);
  }
  return result;
}

Elem PolyRing::eval(const Poly& a, Elem x) const {
  Elem acc = 0;
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), c[i]);
  return acc;
}

bool PolyRing::is_irreducible(const Poly& a) const {
  if (a.degree() <= 0) return false;
  const auto fs = factor(a);
  return fs.size() == 1 && fs.front().second == 1;
}

std::vector<Poly> PolyRing::split_equal_degree(const Poly& g, int k, std::uint64_t& seed) const {
  const int n = g.degree();
  if (n == k) return {monic(g)};
  const std::uint32_t q = f_.q();
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k));

  while (true) {
    std::vector<Elem> rc(static_cast<std::size_t>(n), 0);
    for (auto& c : rc) c = static_cast<Elem>(next_random(seed) % q);
    const Poly r(std::move(rc));
    if (r.degree() <= 0) continue;

    Poly probe;
    if (f_.p() == 2) {
      // Trace map r + r^2 + ... + r^(2^(ek-1)).
      const int steps = static_cast<int>(f_.e()) * k;
      Poly term = mod(r, g);
      probe = term;
      for (int i = 1; i < steps; ++i) {
        term = mod(mul(term, term), g);
        probe = add(probe, term);
      }
    } else {
      probe = sub(powmod(r, (qk - 1) / 2, g), Poly::constant(1));
    }
    Poly d = gcd(probe, g);
    if (d.degree() <= 0 || d.degree() == n) continue;
    auto left = split_equal_degree(d, k, seed);
    auto right = split_equal_degree(divmod(g, d).first, k, seed);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
}

std::vector<std::pair<Poly, int>> PolyRing::factor(const Poly& a) const {
  if (a.is_zero()) throw Error(ErrorCode::ZeroForm, "factorization of the zero polynomial");
  std::vector<std::pair<Poly, int>> out;
  Poly rest = monic(a);
  if (rest.degree() == 0) return out;

  // Distinct irreducible factors. Each factor found at degree k is divided out
  // completely, so a repeated factor of degree k is caught while 2k <= deg(h),
  // and whatever survives the loop is a single irreducible.
  std::vector<Poly> irreducibles;
  const mpz_class qz(f_.q());
  Poly h = rest;
  std::uint64_t seed = 0x5eedULL + static_cast<std::uint64_t>(h.degree());
  Poly xpow = x();
  for (int k = 1; 2 * k <= h.degree(); ++k) {
    xpow = powmod(xpow, qz, h);
    const Poly g = gcd(sub(xpow, x()), h);
    if (g.degree() <= 0) continue;
    for (auto& p : split_equal_degree(g, k, seed)) irreducibles.push_back(std::move(p));
    for (Poly c = g; c.degree() > 0; c = gcd(h, g)) h = divmod(h, c).first;
    xpow = h.degree() > 0 ? mod(xpow, h) : Poly{};
  }
  if (h.degree() > 0) irreducibles.push_back(monic(h));

  std::sort(irreducibles.begin(), irreducibles.end());
  irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end()), irreducibles.end());
  for (const auto& p : irreducibles) {
    int mult = 0;
    while (rest.degree() >= p.degree()) {
      auto [qt, r] = divmod(rest, p);
      if (!r.is_zero()) break;
      rest = std::move(qt);
      ++mult;
    }
    if (mult == 0) throw Error(ErrorCode::InternalAssertion, "factor does not divide");
    out.emplace_back(p, mult);
  }
  if (rest.degree() != 0) throw Error(ErrorCode::InternalAssertion, "incomplete factorization");
  return out;
}

}  // namespace dp5
