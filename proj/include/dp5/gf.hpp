#pragma once

// Exact arithmetic in small finite fields F_q, q = p^e <= 2^16.
//
// Elements are plain integers 0..q-1: the base-p digits of an element are the
// coefficients (low to high) of its representative polynomial modulo the
// field's defining modulus. 0 and 1 encode the additive and multiplicative
// identities.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dp5::gf {

using Elem = std::uint32_t;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

/// Immutable field context. Copies share the same lookup tables.
class FieldCtx {
 public:
  /// Builds F_{p^e}. Throws NotPrime or TooLarge.
  static FieldCtx create(std::uint32_t p, std::uint32_t e);
  /// Builds F_q for a prime power q. Throws NotPrime if q is not a prime power.
  static FieldCtx of_order(std::uint32_t q);

  std::uint32_t p() const noexcept;
  std::uint32_t e() const noexcept;
  std::uint32_t q() const noexcept;

  /// Monic defining polynomial over F_p, coefficients low to high (size e+1).
  std::span<const std::uint32_t> modulus() const noexcept;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  /// Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// Negative exponents invert first; 0^0 == 1.
  Elem pow(Elem a, std::int64_t k) const;

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const noexcept;

  /// A fixed primitive element (generator of the multiplicative group).
  Elem generator() const noexcept;

  /// All q elements, in encoding order 0..q-1.
  std::vector<Elem> elements() const;

  bool operator==(const FieldCtx& other) const noexcept { return q() == other.q(); }

 private:
  struct Tables;
  explicit FieldCtx(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::shared_ptr<const Tables> t_;
};

/// Dense matrix over F_q, row-major.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

/// In-place reduced row echelon form; returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(const FieldCtx& f, Matrix& m);

std::size_t rank(const FieldCtx& f, Matrix m);

/// Basis of {v : M v = 0}, one vector per free column.
std::vector<std::vector<Elem>> nullspace(const FieldCtx& f, Matrix m);

}  // namespace dp5::gf
