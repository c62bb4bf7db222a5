#include <doctest.h>

#include <set>

#include "jderiv/analysis.hpp"
#include "jderiv/incidence.hpp"
#include "jderiv/ring.hpp"
#include "oracles.hpp"

using namespace jderiv;

namespace {

// Every element of a small ring.
std::vector<RingElement> elements(const StructureRing& r) {
  std::vector<RingElement> out;
  for (const auto& v : oracle::all_vectors(r.modulus(), r.rank())) out.push_back(r.element(v));
  return out;
}

}  // namespace

TEST_CASE("build_ring examples") {
  for (Residue m : {2, 5, 12}) {
    const auto z = StructureRing::build(m, 1, {ZmVector(m, {1})}, ZmVector(m, {1}));
    CHECK(z.rank() == 1);
    CHECK(z.same_table(zmod_ring(m)));
    CHECK(z.unit() == z.basis(0));
  }

  const auto dual = dual_numbers(2);
  const auto x = dual.basis(1);
  CHECK((x * x).is_zero());
  CHECK(dual.unit() * x == x);

  SUBCASE("misdeclared unit is reported with the basis index") {
    // Z/2[x]/(x^2 - 1) with x declared as the unit: x * 1 = x != 1.
    std::vector<ZmVector> c{ZmVector(2, {1, 0}), ZmVector(2, {0, 1}), ZmVector(2, {0, 1}),
                            ZmVector(2, {1, 0})};
    CHECK_NOTHROW(StructureRing::build(2, 2, c, ZmVector(2, {1, 0})));
    try {
      StructureRing::build(2, 2, c, ZmVector(2, {0, 1}));
      FAIL("expected a unit-law failure");
    } catch (const ValidationError& e) {
      REQUIRE(e.witness().size() == 1);
      CHECK(e.witness()[0] == 0);
    }
  }

  SUBCASE("non-associative table is reported with a triple") {
    // b0 b0 = b1, everything else zero except b1 b0 = b0: (b0 b0) b0 = b0, b0 (b0 b0) = 0.
    std::vector<ZmVector> c{ZmVector(3, {0, 1}), ZmVector(3, {0, 0}), ZmVector(3, {1, 0}),
                            ZmVector(3, {0, 0})};
    try {
      StructureRing::build(3, 2, c);
      FAIL("expected an associativity failure");
    } catch (const ValidationError& e) {
      REQUIRE(e.witness().size() == 3);
      const auto& w = e.witness();
      // (b_i b_j) b_l != b_i (b_j b_l) for the reported triple, recomputed by hand.
      auto mul = [&](const ZmVector& a, const ZmVector& b) {
        ZmVector out(3, 2);
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) out.add_scaled(c[i * 2 + j], a[i] * b[j]);
        return out;
      };
      const auto bi = ZmVector::unit_vector(3, 2, w[0]);
      const auto bj = ZmVector::unit_vector(3, 2, w[1]);
      const auto bl = ZmVector::unit_vector(3, 2, w[2]);
      CHECK(mul(mul(bi, bj), bl) != mul(bi, mul(bj, bl)));
    }
  }

  CHECK_THROWS_AS(StructureRing::build(2, 2, {ZmVector(2, {1, 0})}), InvalidArgument);
  CHECK_THROWS_AS(StructureRing::build(2, 1, {ZmVector(3, {1})}), InvalidArgument);
}

TEST_CASE("elements from different rings do not mix") {
  const auto a = zmod_ring(3), b = zmod_ring(3);
  CHECK(a.same_table(b));
  CHECK_FALSE(a.same_as(b));
  CHECK_THROWS_AS(a.unit() * b.unit(), InvalidArgument);
  CHECK_FALSE(a.unit() == b.unit());
  CHECK_THROWS_AS(zero_product_ring(2, 1).unit(), InvalidArgument);
}

TEST_CASE("matrix rings") {
  const auto m2 = matrix_ring(zmod_ring(2), 2);
  CHECK(m2.matrix_unit(0, 1) * m2.matrix_unit(1, 0) == m2.matrix_unit(0, 0));
  CHECK((m2.matrix_unit(0, 1) * m2.matrix_unit(0, 1)).is_zero());
  const auto e11 = m2.matrix_unit(0, 0), e22 = m2.matrix_unit(1, 1);
  CHECK(is_idempotent(e11));
  CHECK(are_orthogonal(e11, e22));
  CHECK(e11 + e22 == m2.unit_matrix());
  CHECK(matrix_ring(zmod_ring(4), 3).ring.rank() == 9);
  CHECK(matrix_ring(dual_numbers(3), 2).ring.rank() == 8);

  for (const auto& r : {zmod_ring(4), dual_numbers(2), matrix_ring(zmod_ring(2), 2).ring}) {
    CHECK(matrix_ring(r, 1).ring.same_table(r));
  }
  CHECK_THROWS_AS(matrix_ring(zero_product_ring(2, 1), 2), InvalidArgument);
  CHECK_THROWS_AS(matrix_ring(zmod_ring(2), 0), InvalidArgument);

  SUBCASE("entries multiply through the coefficient ring") {
    const auto d = dual_numbers(4);
    const auto md = matrix_ring(d, 2);
    const auto x = d.basis(1);
    const auto a = md.entry(0, 1, x) + md.entry(1, 1, d.unit());
    const auto b = md.entry(1, 0, 3 * x) + md.entry(0, 0, d.unit());
    const auto ab = a * b;
    // a = [[0, x], [0, 1]], b = [[1, 0], [3x, 0]]: ab = [[3x^2, 0], [3x, 0]] = [[0, 0], [3x, 0]]
    CHECK(md.component(ab, 0, 0).is_zero());
    CHECK(md.component(ab, 1, 0) == 3 * x);
    CHECK(md.component(ab, 0, 1).is_zero());
    CHECK(md.component(ab, 1, 1).is_zero());
  }
}

TEST_CASE("triangular rings") {
  const auto z2 = zmod_ring(2);
  const auto tri = triangular_ring(z2, Bimodule::regular(z2), z2);
  CHECK(tri.rank() == 3);
  CHECK(tri.same_table(fi_ring(Preorder::chain(2), z2).ring()));
  CHECK(tri.unit() == tri.element(std::vector<Residue>{1, 0, 1}));

  // (r, 0, s)(r', 0, s') = (rr', 0, ss')
  const auto z5 = zmod_ring(5);
  const auto t5 = triangular_ring(z5, Bimodule::regular(z5), z5);
  for (Residue r = 0; r < 5; ++r)
    for (Residue s = 0; s < 5; ++s) {
      const auto a = t5.element(std::vector<Residue>{r, 0, s});
      const auto b = t5.element(std::vector<Residue>{s, 0, r});
      CHECK(a * b == t5.element(std::vector<Residue>{r * s, 0, s * r}));
    }

  SUBCASE("matrix-bimodule triangular ring is upper-triangular 2x2 over Z/3") {
    const auto m1 = matrix_ring(zmod_ring(3), 1).ring;
    const auto t = triangular_ring(m1, matrix_bimodule(zmod_ring(3), 1, 1), m1);
    // (phi, psi, eta) <-> [[phi, psi], [0, eta]]
    auto upper = [](const oracle::Vec& a, const oracle::Vec& b) {
      return oracle::Vec{a[0] * b[0] % 3, (a[0] * b[1] + a[1] * b[2]) % 3, a[2] * b[2] % 3};
    };
    const auto all = oracle::all_vectors(3, 3);
    for (const auto& a : all)
      for (const auto& b : all) {
        const auto prod = t.element(a) * t.element(b);
        const auto expected = upper(a, b);
        CHECK(oracle::Vec(prod.coefficients().entries().begin(), prod.coefficients().entries().end()) ==
              expected);
      }
  }

  CHECK_THROWS_AS(triangular_ring(zmod_ring(3), Bimodule::regular(z2), z2), InvalidArgument);
  CHECK_THROWS_AS(triangular_ring(zero_product_ring(2, 1), Bimodule::regular(zero_product_ring(2, 1)),
                                  zero_product_ring(2, 1)),
                  InvalidArgument);
}

TEST_CASE("bimodule validation") {
  const auto z2 = zmod_ring(2);
  // Z/2 acting on (Z/2)^1 by zero is not unital.
  CHECK_THROWS_AS(Bimodule::build(z2, z2, 1, {ZmVector(2, {0})}, {ZmVector(2, {1})}), ValidationError);
  CHECK_NOTHROW(Bimodule::build(z2, z2, 1, {ZmVector(2, {1})}, {ZmVector(2, {1})}));
  CHECK_THROWS_AS(Bimodule::build(z2, z2, 1, {ZmVector(2, {1})}, {}), InvalidArgument);
}

TEST_CASE("direct products") {
  const auto z2 = zmod_ring(2);
  const auto p = direct_product(z2, z2);
  CHECK(p.rank() == 2);
  CHECK(p.unit() == p.element(std::vector<Residue>{1, 1}));
  const auto a = p.element(std::vector<Residue>{1, 0});
  const auto b = p.element(std::vector<Residue>{0, 1});
  CHECK((a * b).is_zero());
  std::size_t idempotents = 0;
  for (const auto& e : elements(p)) idempotents += is_idempotent(e);
  CHECK(idempotents == 4);
  CHECK_THROWS_AS(direct_product(z2, zmod_ring(3)), InvalidArgument);
  CHECK_FALSE(direct_product(z2, zero_product_ring(2, 1)).has_unit());
}

TEST_CASE("idempotents and orthogonality") {
  const auto m3 = matrix_ring(zmod_ring(3), 2);
  const auto e11 = m3.matrix_unit(0, 0), e22 = m3.matrix_unit(1, 1);
  CHECK(are_orthogonal(e11, e22));
  CHECK_FALSE(are_orthogonal(e11, e11));
  CHECK(is_idempotent(m3.ring.unit()));
  CHECK(is_idempotent(m3.ring.zero()));
  CHECK_FALSE(are_orthogonal(m3.ring.unit(), m3.ring.unit()));
  // ef = 0 but fe != 0 in the upper-triangular ring: not orthogonal.
  const auto tri = fi_ring(Preorder::chain(2), zmod_ring(2));
  const auto e = tri.ring().element(std::vector<Residue>{1, 1, 0});
  const auto f = tri.ring().element(std::vector<Residue>{0, 0, 1});
  REQUIRE(is_idempotent(e));
  REQUIRE(is_idempotent(f));
  CHECK((f * e).is_zero());
  CHECK_FALSE((e * f).is_zero());
  CHECK_FALSE(are_orthogonal(e, f));
}

TEST_CASE("corner rings") {
  SUBCASE("e = unit") {
    const auto r = matrix_ring(zmod_ring(4), 2).ring;
    const auto c = corner_ring(r, r.unit());
    CHECK(c.ring.rank() == r.rank());
    CHECK(c.ring.unit() == c.project(r.unit()));
  }
  SUBCASE("e11 in M_2(Z/2) is a copy of Z/2") {
    const auto m2 = matrix_ring(zmod_ring(2), 2);
    const auto e = m2.matrix_unit(0, 0);
    std::set<oracle::Vec> ere;
    for (const auto& x : elements(m2.ring)) {
      const auto y = e * x * e;
      ere.insert(oracle::Vec(y.coefficients().entries().begin(), y.coefficients().entries().end()));
    }
    CHECK(ere.size() == 2);
    const auto c = corner_ring(m2.ring, e);
    CHECK(c.ring.rank() == 1);
    CHECK(c.ring.same_table(zmod_ring(2)));
    CHECK(c.embed(c.ring.unit()) == e);
  }
  SUBCASE("e = 0 gives the zero ring") {
    const auto r = dual_numbers(3);
    const auto c = corner_ring(r, r.zero());
    CHECK(c.ring.rank() == 0);
  }
  SUBCASE("embedding is multiplicative and project inverts it") {
    const auto fi = fi_ring(Preorder::chain(3), dual_numbers(2));
    const auto e = fi.class_idempotent(0) + fi.class_idempotent(1);
    const auto c = corner_ring(fi.ring(), e);
    CHECK(c.ring.rank() == 3 * 2);
    for (std::size_t i = 0; i < c.ring.rank(); ++i)
      for (std::size_t j = 0; j < c.ring.rank(); ++j) {
        const auto x = c.ring.basis(i), y = c.ring.basis(j);
        CHECK(c.embed(x * y) == c.embed(x) * c.embed(y));
      }
    for (std::size_t i = 0; i < c.ring.rank(); ++i) CHECK(c.project(c.embed(c.ring.basis(i))) == c.ring.basis(i));
    CHECK(c.embed(c.ring.unit()) == e);
    CHECK_THROWS_AS(c.project(fi.class_idempotent(2)), InvalidArgument);
  }
  const auto m2 = matrix_ring(zmod_ring(2), 2);
  CHECK_THROWS_AS(corner_ring(m2.ring, m2.matrix_unit(0, 1)), InvalidArgument);
}
