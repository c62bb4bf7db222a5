#include <doctest.h>

#include <random>

#include "jderiv/analysis.hpp"
#include "jderiv/derivation.hpp"
#include "oracles.hpp"

using namespace jderiv;

namespace {

// b0 b0 = b0, b0 b1 = b1, rest zero: associative, non-unital, non-commutative.
StructureRing left_unit_ring(Residue m) {
  return StructureRing::build(m, 2,
                              {ZmVector(m, {1, 0}), ZmVector(m, {0, 1}), ZmVector(m, {0, 0}),
                               ZmVector(m, {0, 0})});
}

// Rings small enough for exhaustive classification, m^(k^2) <= 2^20.
std::vector<StructureRing> small_rings() {
  const auto z2 = zmod_ring(2), z3 = zmod_ring(3);
  return {zmod_ring(2),
          zmod_ring(4),
          zmod_ring(6),
          zmod_ring(9),
          dual_numbers(2),
          dual_numbers(3),
          dual_numbers(4),
          zero_product_ring(2, 2),
          zero_product_ring(4, 2),
          direct_product(z2, z2),
          direct_product(z3, z3),
          left_unit_ring(2),
          left_unit_ring(4),
          triangular_ring(z2, Bimodule::regular(z2), z2),
          triangular_ring(z3, Bimodule::regular(z3), z3),
          fi_ring(Preorder::chain(2), zmod_ring(4)).ring()};
}

}  // namespace

TEST_CASE("derivations of Z/p vanish") {
  for (Residue p : {2, 3, 5, 7}) {
    const auto r = zmod_ring(p);
    const auto der = solve_derivations(r);
    CHECK(der.basis().is_trivial());
    const auto oracle_maps = oracle::classify_all_maps(r);
    CHECK(oracle_maps.derivations.size() == 1);
  }
  CHECK(solve_jordan_derivations(zmod_ring(2)).basis().is_trivial());
}

TEST_CASE("dual numbers over Z/2") {
  const auto r = dual_numbers(2);
  const auto der = solve_derivations(r);
  CHECK(der.cardinality() == 4);
  const auto oracle_maps = oracle::classify_all_maps(r);
  CHECK(oracle_maps.derivations.size() == 4);
  for (const auto& d : der.generators()) {
    CHECK(d.image_of_basis(0).is_zero());  // d(1) = 0
  }
  CHECK(compare_spaces(r).equal);
}

TEST_CASE("solver agrees with exhaustive classification") {
  for (const auto& r : small_rings()) {
    CAPTURE(r.modulus());
    CAPTURE(r.rank());
    const auto truth = oracle::classify_all_maps(r);
    const auto m = r.modulus();
    const std::size_t n = r.rank() * r.rank();
    const auto der = solve_derivations(r), jder = solve_jordan_derivations(r);
    CHECK(oracle::span_of(der.basis()) == oracle::as_set(truth.derivations));
    CHECK(oracle::span_of(jder.basis()) == oracle::as_set(truth.jordan));
    // canonical bases are identical to the Howell form of the enumerated sets
    CHECK(der.basis() == howell_form(m, n, oracle::to_zm(m, truth.derivations)));
    CHECK(jder.basis() == howell_form(m, n, oracle::to_zm(m, truth.jordan)));
    CHECK(compare_spaces(r).equal == (truth.derivations.size() == truth.jordan.size()));
  }
}

TEST_CASE("generators pass the direct check and Der is inside JDer") {
  std::vector<StructureRing> rings = small_rings();
  rings.push_back(matrix_ring(zmod_ring(4), 2).ring);
  rings.push_back(fi_ring(Preorder::chain(3), dual_numbers(2)).ring());
  rings.push_back(fi_ring(Preorder::cycle(2), zmod_ring(6)).ring());
  for (const auto& r : rings) {
    const auto der = solve_derivations(r), jder = solve_jordan_derivations(r);
    for (const auto& d : der.generators()) CHECK(check_map(r, d, MapKind::Derivation).ok);
    for (const auto& d : jder.generators()) CHECK(check_map(r, d, MapKind::JordanDerivation).ok);
    CHECK(jder.basis().contains(der.basis()));
    for (const auto& d : der.generators()) CHECK(jder.contains(d));
  }
}

TEST_CASE("Jordan generators satisfy the quantified axioms on random elements") {
  std::vector<StructureRing> rings = small_rings();
  rings.push_back(matrix_ring(zmod_ring(4), 2).ring);
  rings.push_back(fi_ring(Preorder::antichain(2), dual_numbers(4)).ring());
  std::uint64_t seed = 100;
  for (const auto& r : rings) {
    for (const auto& d : solve_jordan_derivations(r).generators()) {
      const auto report = random_axiom_check(r, d, seed++, 200);
      CHECK(report.all_passed());
    }
  }
}

TEST_CASE("constraint matrices have the documented shape") {
  const auto r = dual_numbers(3);
  const std::size_t k = 2;
  CHECK(derivation_constraints(r).rows() == k * k * k);
  CHECK(derivation_constraints(r).cols() == k * k);
  // Q1: k, Q1pol: k(k-1)/2, Q2: k^2, Q2pol: k(k-1)/2 * k groups, each k rows
  CHECK(jordan_constraints(r).rows() == (k + 1 + k * k + 1 * k) * k);
  CHECK(kernel(derivation_constraints(r)) == solve_derivations(r).basis());
  CHECK(kernel(jordan_constraints(r)) == solve_jordan_derivations(r).basis());
}

TEST_CASE("check_map") {
  for (const auto& r : small_rings()) {
    CHECK(check_map(r, AdditiveMap::zero(r), MapKind::Derivation).ok);
    CHECK(check_map(r, AdditiveMap::zero(r), MapKind::JordanDerivation).ok);
  }
  std::mt19937_64 rng(17);
  const auto m3 = matrix_ring(zmod_ring(3), 2).ring;
  for (int t = 0; t < 10; ++t) {
    const auto a = random_element(m3, rng);
    CHECK(check_map(m3, inner_derivation(m3, a), MapKind::Derivation).ok);
  }

  const auto z4 = zmod_ring(4);
  ZmMatrix two(4, 1, 1);
  two.set(0, 0, 2);
  const AdditiveMap d(z4, two);
  const auto res = check_map(z4, d, MapKind::Derivation);
  CHECK_FALSE(res.ok);
  CHECK(res.identity == "Leibniz");
  CHECK(res.indices == std::vector<std::size_t>{0, 0});
  CHECK_FALSE(check_map(z4, d, MapKind::JordanDerivation).ok);

  // the identity map is never a derivation of a ring with nonzero unit
  CHECK_FALSE(check_map(m3, AdditiveMap::identity(m3), MapKind::JordanDerivation).ok);
  CHECK_THROWS_AS(check_map(m3, AdditiveMap::zero(z4), MapKind::Derivation), InvalidArgument);
}

TEST_CASE("inner derivations") {
  const auto m2 = matrix_ring(zmod_ring(2), 2);
  CHECK(inner_derivation(m2.ring, m2.ring.unit()) == AdditiveMap::zero(m2.ring));
  const auto d = inner_derivation(m2.ring, m2.matrix_unit(0, 1));
  CHECK(d(m2.matrix_unit(1, 0)) == m2.matrix_unit(0, 0) + m2.matrix_unit(1, 1));

  std::mt19937_64 rng(1);
  const auto r = fi_ring(Preorder::chain(2), dual_numbers(4)).ring();
  for (int t = 0; t < 10; ++t) {
    const auto a = random_element(r, rng), b = random_element(r, rng);
    CHECK(inner_derivation(r, a + b) == inner_derivation(r, a) + inner_derivation(r, b));
  }
}

TEST_CASE("compare_spaces examples") {
  CHECK(compare_spaces(matrix_ring(zmod_ring(3), 2).ring).equal);
  CHECK(compare_spaces(dual_numbers(2)).equal);
  const auto zp = zero_product_ring(2, 1);
  const auto cmp = compare_spaces(zp);
  CHECK(cmp.equal);
  CHECK(cmp.derivations.cardinality() == 2);
  CHECK(cmp.jordan.cardinality() == 2);
  CHECK_FALSE(cmp.witness.has_value());
}

TEST_CASE("map vector round trip") {
  std::mt19937_64 rng(6);
  const auto r = dual_numbers(6);
  for (int t = 0; t < 10; ++t) {
    ZmVector v(6, 4);
    for (std::size_t i = 0; i < 4; ++i) v.set(i, static_cast<Residue>(rng() % 6));
    const auto d = AdditiveMap::from_vector(r, v);
    CHECK(d.to_vector() == v);
    // entry j * k + t is coefficient t of d(b_j)
    CHECK(d.image_of_basis(1)[0] == v[2]);
  }
}
