#pragma once

// Finitary incidence rings FI(P, R) of a finite preorder P over a structure
// ring R. For finite P every series is finitary, so FI(P, R) is the group of
// R-valued functions on related pairs (p, q), p <= q, under convolution.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jderiv/preorder.hpp"
#include "jderiv/ring.hpp"

namespace jderiv {

/// A |x| by |y| matrix over R, rows and columns indexed by class members in
/// ascending order.
struct Block {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RingElement> entries;

  const RingElement& at(std::size_t i, std::size_t j) const { return entries.at(i * cols + j); }
  friend bool operator==(const Block&, const Block&) = default;
};

class IncidenceRing {
 public:
  /// Throws InvalidArgument when R has no unit.
  static IncidenceRing build(Preorder p, StructureRing r);

  const Preorder& preorder() const { return preorder_; }
  const QuotientPoset& quotient() const { return quotient_; }
  const StructureRing& coefficients() const { return coeffs_; }
  const StructureRing& ring() const { return ring_; }

  /// Related pairs in basis order: by (class of p, class of q, p, q).
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::optional<std::size_t> pair_index(std::size_t p, std::size_t q) const;
  /// Basis index of b_t placed at (p, q); throws unless p <= q.
  std::size_t index(std::size_t p, std::size_t q, std::size_t t) const;

  /// r placed at position (p, q).
  RingElement entry(std::size_t p, std::size_t q, const RingElement& r) const;
  /// The (p, q) coefficient of a; zero when p is not below q.
  RingElement component(const RingElement& a, std::size_t p, std::size_t q) const;

  /// (ab)_{pq} = sum over p <= z <= q of a_{pz} b_{zq}, evaluated directly.
  RingElement convolve(const RingElement& a, const RingElement& b) const;

  /// e_x: the identity matrix of the class placed at [x, x].
  RingElement class_idempotent(std::size_t cls) const;
  std::vector<RingElement> class_idempotents() const;

  /// The (x, y) hom-block of a; the zero block when x is not below y.
  Block extract_block(const RingElement& a, std::size_t x, std::size_t y) const;
  /// phi[x, y] for a block phi.
  RingElement place_block(const Block& phi, std::size_t x, std::size_t y) const;

  /// Always true for finite P.
  bool is_finitary(const RingElement& a) const;

 private:
  IncidenceRing(Preorder p, QuotientPoset q, StructureRing coeffs, StructureRing ring,
                std::vector<std::pair<std::size_t, std::size_t>> pairs,
                std::vector<std::size_t> pair_lookup)
      : preorder_(std::move(p)), quotient_(std::move(q)), coeffs_(std::move(coeffs)),
        ring_(std::move(ring)), pairs_(std::move(pairs)), pair_lookup_(std::move(pair_lookup)) {}

  void require_element(const RingElement& a) const;

  Preorder preorder_;
  QuotientPoset quotient_;
  StructureRing coeffs_;
  StructureRing ring_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> pair_lookup_;  // p * n + q -> pair index, or npos
};

inline IncidenceRing fi_ring(const Preorder& p, const StructureRing& r) {
  return IncidenceRing::build(p, r);
}

struct FamilyWitness {
  std::size_t e = 0;  // positions in the family
  std::size_t f = 0;
  std::size_t r = 0;  // basis indices
  std::size_t s = 0;
};

struct FamilyReport {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<FamilyWitness> witness;
};

/// For pairwise orthogonal idempotents E, checks e r s f = sum of e r g s f over
/// the g in E with e r g s f != 0, for all basis r, s and all e, f in E.
/// Throws InvalidArgument when E is not a family of orthogonal idempotents.
FamilyReport verify_family_conditions(const StructureRing& r, const std::vector<RingElement>& family);

/// Throws InvalidArgument unless every member is idempotent and distinct members are orthogonal.
void require_orthogonal_family(const StructureRing& r, const std::vector<RingElement>& family);

}  // namespace jderiv
