#pragma once

// Derivations and Jordan derivations of a structure ring as solution
// subgroups of a linear system over Z/m.
//
// Unknowns are the k^2 entries of the matrix D of d, column-major: unknown
// j * k + t is coefficient t of d(b_j). Every group endomorphism of (Z/m)^k
// is Z/m-linear, so these matrices are exactly the additive maps.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jderiv/ring.hpp"
#include "jderiv/zmod.hpp"

namespace jderiv {

enum class MapKind { Derivation, JordanDerivation };

std::string to_string(MapKind kind);

class AdditiveMap {
 public:
  /// Column j of `matrix` is d(b_j).
  AdditiveMap(StructureRing ring, ZmMatrix matrix);
  static AdditiveMap zero(const StructureRing& ring);
  static AdditiveMap identity(const StructureRing& ring);
  /// Inverse of to_vector().
  static AdditiveMap from_vector(const StructureRing& ring, const ZmVector& v);

  const StructureRing& ring() const { return ring_; }
  const ZmMatrix& matrix() const { return matrix_; }

  RingElement operator()(const RingElement& x) const;
  RingElement image_of_basis(std::size_t j) const;

  /// Column-major flattening, the coordinates used by the solver.
  ZmVector to_vector() const;

  AdditiveMap& operator+=(const AdditiveMap& o);
  AdditiveMap& operator-=(const AdditiveMap& o);
  friend AdditiveMap operator+(AdditiveMap a, const AdditiveMap& b) { return a += b; }
  friend AdditiveMap operator-(AdditiveMap a, const AdditiveMap& b) { return a -= b; }

  /// Compares matrices only; maps on rings with identical tables compare equal.
  friend bool operator==(const AdditiveMap& a, const AdditiveMap& b) { return a.matrix_ == b.matrix_; }

 private:
  StructureRing ring_;
  ZmMatrix matrix_;
};

class DerivationSpace {
 public:
  DerivationSpace(StructureRing ring, MapKind kind, SubgroupBasis basis);

  const StructureRing& ring() const { return ring_; }
  MapKind kind() const { return kind_; }
  /// Howell form in dimension k^2.
  const SubgroupBasis& basis() const { return basis_; }
  std::vector<AdditiveMap> generators() const;
  bool contains(const AdditiveMap& d) const;
  BigCount cardinality() const { return basis_.cardinality(); }

 private:
  StructureRing ring_;
  MapKind kind_;
  SubgroupBasis basis_;
};

/// Linear system whose kernel is Der(R): rows d(b_i b_j) - d(b_i) b_j - b_i d(b_j),
/// ordered by (i, j), k scalar rows each.
ZmMatrix derivation_constraints(const StructureRing& r);

/// Linear system whose kernel is JDer(R). Row groups in order: Q1(b_i) by i,
/// Q1pol(b_i, b_j) by i < j, Q2(b_i, b_j) by (i, j), Q2pol(b_i, b_l; b_j) by
/// (i < l, j), where
///   Q1(r)      = d(r^2) - d(r) r - r d(r)
///   Q1pol(r,s) = d(rs + sr) - d(r) s - r d(s) - d(s) r - s d(r)
///   Q2(r,s)    = d(rsr) - d(r) s r - r d(s) r - r s d(r)
///   Q2pol(r,t;s) = Q2(r + t, s) - Q2(r, s) - Q2(t, s).
/// Q1 and Q2 are quadratic in r, so their values at all basis elements and at
/// all sums of two basis elements determine them everywhere; this holds for
/// every m, including even m where the polarised forms alone do not suffice.
ZmMatrix jordan_constraints(const StructureRing& r);

DerivationSpace solve_derivations(const StructureRing& r);
DerivationSpace solve_jordan_derivations(const StructureRing& r);
DerivationSpace solve_space(const StructureRing& r, MapKind kind);

struct MapCheck {
  bool ok = true;
  /// Name of the first violated basis identity, e.g. "Q2pol".
  std::string identity;
  std::vector<std::size_t> indices;

  explicit operator bool() const { return ok; }
};

/// Evaluates the basis-level identities of `kind` directly on d.
MapCheck check_map(const StructureRing& r, const AdditiveMap& d, MapKind kind);

/// r -> a r - r a.
AdditiveMap inner_derivation(const StructureRing& r, const RingElement& a);

struct SpaceComparison {
  DerivationSpace derivations;
  DerivationSpace jordan;
  bool equal = true;
  /// A Jordan derivation that is not a derivation, when the spaces differ.
  std::optional<AdditiveMap> witness;
};

SpaceComparison compare_spaces(const StructureRing& r);

}  // namespace jderiv
