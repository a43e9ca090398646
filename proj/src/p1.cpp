#include "dp5/p1.hpp"

#include <algorithm>

#include "dp5/error.hpp"

namespace dp5::p1 {

BinaryForm::BinaryForm(FieldCtx ctx, int d, std::vector<Elem> coeffs)
    : ctx_(std::move(ctx)), d_(d), c_(std::move(coeffs)) {
  if (d < 0 || c_.size() != static_cast<std::size_t>(d) + 1) {
    throw Error(ErrorCode::PreconditionViolated, "form coefficient count must be degree + 1");
  }
}

BinaryForm BinaryForm::zero(FieldCtx ctx, int d) {
  return BinaryForm(std::move(ctx), d, std::vector<Elem>(static_cast<std::size_t>(d) + 1, 0));
}

BinaryForm BinaryForm::from_poly(FieldCtx ctx, int d, const Poly& p) {
  if (p.degree() > d) throw Error(ErrorCode::PreconditionViolated, "polynomial degree exceeds form degree");
  std::vector<Elem> c(static_cast<std::size_t>(d) + 1, 0);
  std::copy(p.coeffs().begin(), p.coeffs().end(), c.begin());
  return BinaryForm(std::move(ctx), d, std::move(c));
}

bool BinaryForm::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](Elem x) { return x == 0; });
}

int BinaryForm::infinity_order() const noexcept { return d_ - dehomogenize().degree(); }

BinaryForm BinaryForm::operator*(const BinaryForm& other) const {
  const PolyRing ring(ctx_);
  return from_poly(ctx_, d_ + other.d_, ring.mul(dehomogenize(), other.dehomogenize()));
}

std::strong_ordering ClosedPoint::operator<=>(const ClosedPoint& other) const {
  if (inf_ != other.inf_) return inf_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (inf_) return std::strong_ordering::equal;
  return p_ <=> other.p_;
}

DivisorP1::DivisorP1(Map entries) {
  for (auto& [p, m] : entries) {
    if (m > 0) m_.emplace(p, m);
  }
}

DivisorP1 DivisorP1::point(ClosedPoint p, int mult) {
  Map m;
  m.emplace(std::move(p), mult);
  return DivisorP1(std::move(m));
}

int DivisorP1::degree() const noexcept {
  int total = 0;
  for (const auto& [p, m] : m_) total += m * p.degree();
  return total;
}

int DivisorP1::multiplicity(const ClosedPoint& p) const {
  auto it = m_.find(p);
  return it == m_.end() ? 0 : it->second;
}

bool DivisorP1::is_squarefree() const noexcept {
  return std::all_of(m_.begin(), m_.end(), [](const auto& e) { return e.second == 1; });
}

Poly DivisorP1::finite_modulus(const PolyRing& ring) const {
  Poly out = Poly::constant(1);
  for (const auto& [p, m] : m_) {
    if (p.is_infinity()) continue;
    for (int i = 0; i < m; ++i) out = ring.mul(out, p.poly());
  }
  return out;
}

DivisorP1 DivisorP1::operator+(const DivisorP1& other) const {
  Map out = m_;
  for (const auto& [p, m] : other.m_) out[p] += m;
  return DivisorP1(std::move(out));
}

DivisorP1 DivisorP1::operator-(const DivisorP1& other) const {
  Map out = m_;
  for (const auto& [p, m] : other.m_) {
    auto it = out.find(p);
    if (it == out.end() || it->second < m) {
      throw Error(ErrorCode::PreconditionViolated, "divisor difference is not effective");
    }
    it->second -= m;
  }
  return DivisorP1(std::move(out));
}

DivisorP1 divisor_of(const BinaryForm& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroForm, "divisor of the zero form");
  const PolyRing ring(f.ctx());
  DivisorP1::Map m;
  if (const int k = f.infinity_order(); k > 0) m.emplace(ClosedPoint::infinity(), k);
  for (auto& [p, mult] : ring.factor(f.dehomogenize())) m.emplace(ClosedPoint::finite(std::move(p)), mult);
  return DivisorP1(std::move(m));
}

DivisorP1 gcd_div(const DivisorP1& a, const DivisorP1& b) {
  DivisorP1::Map out;
  for (const auto& [p, m] : a.entries()) {
    if (const int n = b.multiplicity(p); n > 0) out.emplace(p, std::min(m, n));
  }
  return DivisorP1(std::move(out));
}

DivisorP1 lcm_div(const DivisorP1& a, const DivisorP1& b) {
  DivisorP1::Map out = a.entries();
  for (const auto& [p, m] : b.entries()) {
    auto& slot = out[p];
    slot = std::max(slot, m);
  }
  return DivisorP1(std::move(out));
}

bool leq(const DivisorP1& a, const DivisorP1& b) {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [&](const auto& e) { return e.second <= b.multiplicity(e.first); });
}

bool disjoint(const DivisorP1& a, const DivisorP1& b) { return gcd_div(a, b).is_zero(); }

int mobius(const DivisorP1& d) {
  if (!d.is_squarefree()) return 0;
  return d.entries().size() % 2 == 0 ? 1 : -1;
}

std::vector<DivisorP1> subdivisors(const DivisorP1& d) {
  std::vector<DivisorP1> out{DivisorP1{}};
  for (const auto& [p, m] : d.entries()) {
    std::vector<DivisorP1> next;
    next.reserve(out.size() * static_cast<std::size_t>(m + 1));
    for (const auto& base : out) {
      for (int k = 0; k <= m; ++k) next.push_back(k == 0 ? base : base + DivisorP1::point(p, k));
    }
    out = std::move(next);
  }
  return out;
}

namespace {

int int_mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

mpz_class points_by_degree(std::uint64_t q, int n) {
  if (n < 1) throw Error(ErrorCode::PreconditionViolated, "point degree must be >= 1");
  mpz_class total = 0;
  for (int m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    const int mu = int_mobius(m);
    if (mu == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), q, static_cast<unsigned long>(n / m));
    total += mu * term;
  }
  total /= n;
  if (n == 1) total += 1;
  return total;
}

std::vector<Poly> monic_irreducibles(const FieldCtx& ctx, int n) {
  const PolyRing ring(ctx);
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= ctx.q();
  std::vector<Poly> out;
  std::vector<Elem> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (int i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<Elem>(v % ctx.q());
      v /= ctx.q();
    }
    Poly p(c);
    if (ring.is_irreducible(p)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BinaryForm form_from_index(const FieldCtx& ctx, int d, std::uint64_t index) {
  std::vector<Elem> c(static_cast<std::size_t>(d) + 1, 0);
  for (std::size_t j = c.size(); j-- > 0;) {
    c[j] = static_cast<Elem>(index % ctx.q());
    index /= ctx.q();
  }
  return BinaryForm(ctx, d, std::move(c));
}

mpz_class section_count(std::uint64_t q, int d) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, static_cast<unsigned long>(d + 1));
  return out;
}

SectionStream::SectionStream(FieldCtx ctx, int d, bool nonzero_only, std::uint64_t budget)
    : ctx_(std::move(ctx)), d_(d) {
  if (d < 0) throw Error(ErrorCode::PreconditionViolated, "negative form degree");
  const mpz_class total = section_count(ctx_.q(), d);
  if (total > mpz_class(std::to_string(budget))) {
    throw Error(ErrorCode::BudgetExceeded, "q^(d+1) = " + total.get_str() + " exceeds budget");
  }
  begin_ = nonzero_only ? 1 : 0;
  end_ = std::stoull(total.get_str());
  cur_ = begin_;
}

std::optional<BinaryForm> SectionStream::next() {
  if (cur_ >= end_) return std::nullopt;
  return form_from_index(ctx_, d_, cur_++);
}

}  // namespace dp5::p1
