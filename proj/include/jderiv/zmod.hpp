#pragma once

// Exact linear algebra over Z/m: residue vectors and matrices, Howell normal
// form, kernels and canonical subgroup comparison.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "jderiv/error.hpp"

namespace jderiv {

using Residue = std::int64_t;
using BigCount = boost::multiprecision::cpp_int;

/// Largest accepted modulus; products of two residues stay below 2^62.
inline constexpr Residue kMaxModulus = Residue{1} << 31;

void check_modulus(Residue m);

inline Residue reduce(Residue a, Residue m) {
  a %= m;
  return a < 0 ? a + m : a;
}
inline Residue add_mod(Residue a, Residue b, Residue m) {
  Residue s = a + b;
  return s >= m ? s - m : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue m) {
  Residue s = a - b;
  return s < 0 ? s + m : s;
}
inline Residue mul_mod(Residue a, Residue b, Residue m) { return (a * b) % m; }

/// gcd(a, m) for a residue a; gcd(0, m) = m.
Residue gcd_mod(Residue a, Residue m);

/// A unit u of Z/m with u*a = gcd(a, m) (mod m). Requires a != 0.
Residue normalizing_unit(Residue a, Residue m);

/// Multiplicative inverse of a unit, or nullopt when a is not invertible.
std::optional<Residue> inverse_mod(Residue a, Residue m);

class ZmVector {
 public:
  ZmVector() = default;
  ZmVector(Residue modulus, std::size_t size);
  ZmVector(Residue modulus, std::vector<Residue> entries);
  ZmVector(Residue modulus, std::initializer_list<Residue> entries)
      : ZmVector(modulus, std::vector<Residue>(entries)) {}

  static ZmVector unit_vector(Residue modulus, std::size_t size, std::size_t i);

  Residue modulus() const { return modulus_; }
  std::size_t size() const { return entries_.size(); }
  Residue operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, Residue value) { entries_[i] = reduce(value, modulus_); }
  std::span<const Residue> entries() const { return entries_; }

  bool is_zero() const;
  /// Index of the first nonzero entry, or size() when zero.
  std::size_t leading_index() const;

  ZmVector& operator+=(const ZmVector& other);
  ZmVector& operator-=(const ZmVector& other);
  ZmVector& operator*=(Residue scalar);
  /// this += scalar * other
  void add_scaled(const ZmVector& other, Residue scalar);

  friend ZmVector operator+(ZmVector a, const ZmVector& b) { return a += b; }
  friend ZmVector operator-(ZmVector a, const ZmVector& b) { return a -= b; }
  friend ZmVector operator-(ZmVector a) { return a *= -1; }
  friend ZmVector operator*(Residue s, ZmVector a) { return a *= s; }

  friend bool operator==(const ZmVector&, const ZmVector&) = default;
  friend auto operator<=>(const ZmVector&, const ZmVector&) = default;

  std::string to_string() const;

 private:
  void require_compatible(const ZmVector& other) const;

  Residue modulus_ = 2;
  std::vector<Residue> entries_;
};

class ZmMatrix {
 public:
  ZmMatrix() = default;
  ZmMatrix(Residue modulus, std::size_t rows, std::size_t cols);
  static ZmMatrix from_rows(Residue modulus, std::size_t cols, std::span<const ZmVector> rows);
  static ZmMatrix from_rows(Residue modulus, const std::vector<std::vector<Residue>>& rows);
  static ZmMatrix identity(Residue modulus, std::size_t n);

  Residue modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = reduce(v, modulus_); }
  void add_to(std::size_t r, std::size_t c, Residue v) {
    auto& x = data_[r * cols_ + c];
    x = reduce(x + reduce(v, modulus_), modulus_);
  }

  ZmVector row(std::size_t r) const;
  ZmVector column(std::size_t c) const;
  std::vector<ZmVector> row_vectors() const;

  ZmMatrix transpose() const;
  ZmVector operator*(const ZmVector& v) const;
  ZmMatrix operator*(const ZmMatrix& other) const;
  friend bool operator==(const ZmMatrix&, const ZmMatrix&) = default;

 private:
  Residue modulus_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

/// A subgroup of (Z/m)^N stored as its Howell normal form. Two subgroups are
/// equal exactly when their generator lists are identical.
class SubgroupBasis {
 public:
  SubgroupBasis(Residue modulus, std::size_t dimension);

  Residue modulus() const { return modulus_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<ZmVector>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool is_trivial() const { return generators_.empty(); }

  /// Pivot column of each generator (strictly increasing).
  std::vector<std::size_t> pivots() const;

  /// Reduces v against the Howell rows; the result is zero iff v is in the span.
  ZmVector reduce(ZmVector v) const;
  bool contains(const ZmVector& v) const;
  bool contains(const SubgroupBasis& other) const;
  BigCount cardinality() const;

  friend bool operator==(const SubgroupBasis&, const SubgroupBasis&) = default;

 private:
  friend SubgroupBasis howell_form(Residue, std::size_t, std::vector<ZmVector>);
  void require_compatible(const ZmVector& v) const;

  Residue modulus_;
  std::size_t dimension_;
  std::vector<ZmVector> generators_;
};

SubgroupBasis howell_form(Residue modulus, std::size_t dimension, std::vector<ZmVector> rows);
SubgroupBasis howell_form(const ZmMatrix& m);

/// {v : M v = 0}.
SubgroupBasis kernel(const ZmMatrix& m);

/// Some x with sum_i x_i * rows[i] = target, or nullopt if target is outside the span.
std::optional<ZmVector> solve_left(Residue modulus, std::size_t dimension,
                                   std::span<const ZmVector> rows, const ZmVector& target);

bool subgroup_contains(const SubgroupBasis& b, const ZmVector& v);
bool subgroup_equal(const SubgroupBasis& a, const SubgroupBasis& b);
BigCount subgroup_cardinality(const SubgroupBasis& b);

/// Streams rows into a row span without materialising the full matrix. Rows
/// already in the current span are dropped on arrival.
class RowSpanAccumulator {
 public:
  RowSpanAccumulator(Residue modulus, std::size_t dimension, std::size_t batch = 64);

  void add(ZmVector row);
  /// Howell form of everything added so far.
  const SubgroupBasis& basis();
  std::size_t rows_seen() const { return seen_; }

 private:
  void flush();

  SubgroupBasis basis_;
  std::vector<ZmVector> pending_;
  std::size_t batch_;
  std::size_t seen_ = 0;
};

}  // namespace jderiv
