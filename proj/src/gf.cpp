#include "dp5/gf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dp5/error.hpp"

namespace dp5::gf {

namespace {

using Digits = std::vector<std::uint32_t>;

void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Digits prime_mod(Digits a, const Digits& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t(p - lead) * b[i]) % p);
    }
    trim(a);
  }
  return a;
}

bool prime_poly_irreducible(const Digits& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return true;
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    // Every monic divisor candidate of degree k.
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    Digits cand(k + 1, 0);
    cand[k] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < k; ++i) {
        cand[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (prime_mod(f, cand, p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically smallest monic irreducible of degree e, comparing c0 first.
Digits smallest_irreducible(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  Digits f(e + 1, 0);
  f[e] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c0 is the most significant digit of idx.
    std::uint64_t v = idx;
    for (std::uint32_t i = e; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (prime_poly_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::InternalAssertion, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

struct FieldCtx::Tables {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  Digits modulus;
  std::vector<std::uint16_t> add;  // q*q, only when q <= 256
  std::vector<std::uint16_t> neg;
  std::vector<std::uint32_t> log;
  std::vector<std::uint16_t> exp;  // length 2(q-1)
  std::vector<std::uint16_t> inv;
  Elem generator = 1;

  Digits decode(Elem a) const {
    Digits d(e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }

  Elem encode(const Digits& d) const {
    Elem out = 0;
    for (std::size_t i = d.size(); i-- > 0;) out = out * p + d[i];
    return out;
  }

  Elem digit_add(Elem a, Elem b) const {
    Elem out = 0;
    Elem scale = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      out += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }

  Elem slow_mul(Elem a, Elem b) const {
    const Digits da = decode(a);
    const Digits db = decode(b);
    Digits prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
      for (std::uint32_t j = 0; j < e; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p);
      }
    }
    Digits r = prime_mod(prod, modulus, p);
    r.resize(e, 0);
    return encode(r);
  }

  Elem slow_pow(Elem a, std::uint64_t k) const {
    Elem result = 1;
    while (k > 0) {
      if (k & 1) result = slow_mul(result, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return result;
  }
};

FieldCtx FieldCtx::create(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::PreconditionViolated, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) {
      throw Error(ErrorCode::TooLarge, "field order exceeds 2^16");
    }
  }

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->e = e;
  t->q = static_cast<std::uint32_t>(q);
  t->modulus = smallest_irreducible(p, e);

  const std::uint32_t n = t->q - 1;
  const auto factors = prime_factors(n);
  Elem g = 0;
  for (Elem cand = 1; cand < t->q; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (t->slow_pow(cand, n / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw Error(ErrorCode::InternalAssertion, "no primitive element");
  t->generator = g;

  t->log.assign(t->q, 0);
  t->exp.assign(2 * std::max<std::uint32_t>(n, 1), 0);
  Elem x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    t->exp[i] = static_cast<std::uint16_t>(x);
    t->exp[i + n] = static_cast<std::uint16_t>(x);
    t->log[x] = i;
    x = t->slow_mul(x, g);
  }
  if (n == 1) t->exp[1] = 1;

  t->inv.assign(t->q, 0);
  for (Elem a = 1; a < t->q; ++a) {
    t->inv[a] = t->exp[(n - t->log[a]) % n];
  }

  t->neg.assign(t->q, 0);
  for (Elem a = 0; a < t->q; ++a) {
    Digits d = t->decode(a);
    for (auto& c : d) c = (p - c) % p;
    t->neg[a] = static_cast<std::uint16_t>(t->encode(d));
  }

  if (t->q <= 256 && e > 1 && p != 2) {
    t->add.assign(std::size_t(t->q) * t->q, 0);
    for (Elem a = 0; a < t->q; ++a) {
      for (Elem b = 0; b < t->q; ++b) t->add[a * t->q + b] = static_cast<std::uint16_t>(t->digit_add(a, b));
    }
  }
  return FieldCtx(std::move(t));
}

FieldCtx FieldCtx::of_order(std::uint32_t q) {
  if (q < 2) throw Error(ErrorCode::NotPrime, "field order must be a prime power >= 2");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t e = 0;
  std::uint64_t v = q;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  if (v != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return create(p, e);
}

std::uint32_t FieldCtx::p() const noexcept { return t_->p; }
std::uint32_t FieldCtx::e() const noexcept { return t_->e; }
std::uint32_t FieldCtx::q() const noexcept { return t_->q; }
std::span<const std::uint32_t> FieldCtx::modulus() const noexcept { return t_->modulus; }
Elem FieldCtx::generator() const noexcept { return t_->generator; }

Elem FieldCtx::add(Elem a, Elem b) const noexcept {
  const Tables& t = *t_;
  if (t.e == 1) {
    const Elem s = a + b;
    return s >= t.p ? s - t.p : s;
  }
  if (t.p == 2) return a ^ b;
  if (!t.add.empty()) return t.add[a * t.q + b];
  return t.digit_add(a, b);
}

Elem FieldCtx::neg(Elem a) const noexcept { return t_->neg[a]; }

Elem FieldCtx::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FieldCtx::mul(Elem a, Elem b) const noexcept {
  if (a == 0 || b == 0) return 0;
  const Tables& t = *t_;
  return t.exp[t.log[a] + t.log[b]];
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return t_->inv[a];
}

Elem FieldCtx::pow(Elem a, std::int64_t k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return 0;
  }
  const std::int64_t n = t_->q - 1;
  std::int64_t r = (static_cast<std::int64_t>(t_->log[a]) * (((k % n) + n) % n)) % n;
  return t_->exp[static_cast<std::size_t>(r)];
}

Elem FieldCtx::from_int(std::int64_t n) const noexcept {
  const std::int64_t p = t_->p;
  return static_cast<Elem>(((n % p) + p) % p);
}

std::vector<Elem> FieldCtx::elements() const {
  std::vector<Elem> out(t_->q);
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

std::vector<std::size_t> row_reduce(const FieldCtx& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    }
    const Elem s = f.inv(m.at(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = f.mul(m.at(row, c), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Elem factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const FieldCtx& f, Matrix m) { return row_reduce(f, m).size(); }

std::vector<std::vector<Elem>> nullspace(const FieldCtx& f, Matrix m) {
  const auto pivots = row_reduce(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dp5::gf
