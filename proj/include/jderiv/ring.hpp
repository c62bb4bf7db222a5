#pragma once

// Finite rings presented by structure constants on the additive group (Z/m)^k,
// together with the constructors used throughout the library: Z/m, dual
// numbers, matrix rings, triangular rings, direct products and corner rings.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jderiv/zmod.hpp"

namespace jderiv {

class RingElement;

/// Immutable handle to a ring b_i * b_j = sum_t c[i][j][t] b_t. Copies share
/// the same table; two handles denote the same ring iff same_as() holds.
class StructureRing {
 public:
  /// Validates the table. Throws ValidationError with witness (i, j, l) on an
  /// associativity failure and witness (i) when the declared unit fails on b_i.
  static StructureRing build(Residue modulus, std::size_t rank, std::vector<ZmVector> constants,
                             std::optional<ZmVector> unit = std::nullopt,
                             std::vector<std::string> labels = {});

  Residue modulus() const;
  std::size_t rank() const;
  const std::vector<std::string>& labels() const;
  /// Coefficients of b_i * b_j.
  const ZmVector& structure(std::size_t i, std::size_t j) const;

  ZmVector multiply(const ZmVector& x, const ZmVector& y) const;

  bool has_unit() const;
  /// Throws InvalidArgument for non-unital rings.
  RingElement unit() const;
  RingElement zero() const;
  RingElement basis(std::size_t i) const;
  RingElement element(ZmVector coefficients) const;
  RingElement element(std::vector<Residue> coefficients) const;

  /// First basis triple with (b_i b_j) b_l != b_i (b_j b_l), if any.
  std::optional<std::array<std::size_t, 3>> associativity_violation() const;

  bool same_as(const StructureRing& other) const { return impl_ == other.impl_; }
  /// Same modulus, rank, structure constants and unit.
  bool same_table(const StructureRing& other) const;

 private:
  struct Impl;
  explicit StructureRing(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

class RingElement {
 public:
  RingElement(StructureRing ring, ZmVector coefficients);

  const StructureRing& ring() const { return ring_; }
  const ZmVector& coefficients() const { return coeffs_; }
  Residue operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const { return coeffs_.is_zero(); }

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(RingElement a) {
    a.coeffs_ *= -1;
    return a;
  }
  friend RingElement operator*(Residue s, RingElement a) {
    a.coeffs_ *= s;
    return a;
  }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ring_.same_as(b.ring_) && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const { return coeffs_.to_string(); }

 private:
  void require_same_ring(const RingElement& o) const;

  StructureRing ring_;
  ZmVector coeffs_;
};

bool is_idempotent(const RingElement& e);
/// ef = 0 and fe = 0, both checked.
bool are_orthogonal(const RingElement& e, const RingElement& f);

/// (A, B)-bimodule on (Z/m)^{k_M}. left_action[i * k_M + j] = a_i * m_j,
/// right_action[j * k_B + i] = m_j * b_i.
class Bimodule {
 public:
  static Bimodule build(StructureRing left, StructureRing right, std::size_t rank,
                        std::vector<ZmVector> left_action, std::vector<ZmVector> right_action);
  /// R as an (R, R)-bimodule over itself.
  static Bimodule regular(const StructureRing& r);

  const StructureRing& left_ring() const { return left_; }
  const StructureRing& right_ring() const { return right_; }
  std::size_t rank() const { return rank_; }
  Residue modulus() const { return left_.modulus(); }

  const ZmVector& left_structure(std::size_t i, std::size_t j) const {
    return left_action_[i * rank_ + j];
  }
  const ZmVector& right_structure(std::size_t j, std::size_t i) const {
    return right_action_[j * right_.rank() + i];
  }
  ZmVector act_left(const ZmVector& a, const ZmVector& m) const;
  ZmVector act_right(const ZmVector& m, const ZmVector& b) const;

 private:
  Bimodule(StructureRing l, StructureRing r, std::size_t rank, std::vector<ZmVector> la,
           std::vector<ZmVector> ra)
      : left_(std::move(l)), right_(std::move(r)), rank_(rank), left_action_(std::move(la)),
        right_action_(std::move(ra)) {}

  StructureRing left_;
  StructureRing right_;
  std::size_t rank_;
  std::vector<ZmVector> left_action_;
  std::vector<ZmVector> right_action_;
};

StructureRing zmod_ring(Residue m);
/// Z/m[x]/(x^2) with basis {1, x}.
StructureRing dual_numbers(Residue m);
/// The ring on (Z/m)^k with identically zero multiplication.
StructureRing zero_product_ring(Residue m, std::size_t k);

/// M_n(R) with basis index (i * n + j) * k + t for e_ij * b_t.
struct MatrixRing {
  StructureRing ring;
  StructureRing coefficients;
  std::size_t n;

  std::size_t index(std::size_t i, std::size_t j, std::size_t t) const {
    return (i * n + j) * coefficients.rank() + t;
  }
  /// e_ij with entry 1_R.
  RingElement matrix_unit(std::size_t i, std::size_t j) const;
  /// r * e_ij.
  RingElement entry(std::size_t i, std::size_t j, const RingElement& r) const;
  RingElement unit_matrix() const { return ring.unit(); }
  /// The (i, j) entry of x, an element of the coefficient ring.
  RingElement component(const RingElement& x, std::size_t i, std::size_t j) const;
};

/// Throws InvalidArgument when R has no unit or n == 0.
MatrixRing matrix_ring(const StructureRing& r, std::size_t n);

/// Tri(A, M, B): basis A, then M, then B, with
/// (r, m, s)(r', m', s') = (rr', rm' + ms', ss').
StructureRing triangular_ring(const StructureRing& a, const Bimodule& m, const StructureRing& b);

StructureRing direct_product(const StructureRing& a, const StructureRing& b);

/// eRe presented on its own basis. embedding[i] is the image in R of the i-th
/// corner basis element; e is the unit of the corner.
struct CornerRing {
  StructureRing ring;
  StructureRing parent;
  std::vector<ZmVector> embedding;

  RingElement embed(const RingElement& x) const;
  /// Inverse of embed on eRe; throws InvalidArgument outside eRe.
  RingElement project(const RingElement& y) const;
};

/// Throws InvalidArgument if e is not idempotent, and ValidationError when eRe
/// is not free over Z/m (possible only when m has two distinct prime factors).
CornerRing corner_ring(const StructureRing& r, const RingElement& e);

}  // namespace jderiv
