#include <doctest.h>

#include <random>

#include "jderiv/analysis.hpp"
#include "oracles.hpp"

using namespace jderiv;

namespace {

struct Instance {
  Preorder p;
  StructureRing r;
};

std::vector<Instance> instances() {
  std::vector<Instance> out;
  for (const auto& r : {zmod_ring(2), zmod_ring(4), dual_numbers(2)}) {
    out.push_back({Preorder::chain(2), r});
    out.push_back({Preorder::chain(3), r});
    out.push_back({Preorder::cycle(2), r});
    out.push_back({Preorder::antichain(2), r});
    out.push_back({Preorder::from_pairs({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}), r});
    out.push_back({Preorder::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}}), r});
  }
  return out;
}

}  // namespace

TEST_CASE("restrict_corner") {
  SUBCASE("e = unit returns d") {
    std::mt19937_64 rng(3);
    const auto r = fi_ring(Preorder::chain(2), dual_numbers(2)).ring();
    const auto d = inner_derivation(r, random_element(r, rng));
    const auto de = restrict_corner(d, r.unit());
    CHECK(de.map.matrix() == d.matrix());
  }
  SUBCASE("ad_e12 restricted to e11 M_2(Z/2) e11 is zero") {
    const auto m2 = matrix_ring(zmod_ring(2), 2);
    const auto de = restrict_corner(inner_derivation(m2.ring, m2.matrix_unit(0, 1)), m2.matrix_unit(0, 0));
    CHECK(de.corner.ring.rank() == 1);
    CHECK(de.map == AdditiveMap::zero(de.corner.ring));
  }
  SUBCASE("restriction is transitive") {
    const auto fi = fi_ring(Preorder::chain(3), zmod_ring(4));
    const auto& R = fi.ring();
    const auto e = fi.class_idempotent(1);
    const auto f = fi.class_idempotent(0) + fi.class_idempotent(1);
    REQUIRE(e * f == e);
    REQUIRE(f * e == e);
    for (const auto& d : solve_jordan_derivations(R).generators()) {
      const auto direct = restrict_corner(d, e);
      const auto df = restrict_corner(d, f);
      const auto dfe = restrict_corner(df.map, df.corner.project(e));
      for (std::size_t i = 0; i < direct.corner.ring.rank(); ++i) {
        const auto x = direct.corner.embed(direct.corner.ring.basis(i));
        const auto via_e = direct.corner.embed(direct.map(direct.corner.project(x)));
        const auto x_in_f = df.corner.project(x);
        const auto x_in_fe = dfe.corner.project(x_in_f);
        const auto via_fe = df.corner.embed(dfe.corner.embed(dfe.map(x_in_fe)));
        CHECK(via_e == via_fe);
      }
    }
  }
  SUBCASE("corners inherit the Jordan and derivation properties") {
    for (const auto& inst : instances()) {
      const auto fi = fi_ring(inst.p, inst.r);
      for (const auto& d : solve_jordan_derivations(fi.ring()).generators())
        for (const auto& e : fi.class_idempotents()) {
          const auto de = restrict_corner(d, e);
          CHECK(check_map(de.corner.ring, de.map, MapKind::JordanDerivation).ok);
        }
    }
  }
  const auto m2 = matrix_ring(zmod_ring(2), 2);
  CHECK_THROWS_AS(restrict_corner(AdditiveMap::zero(m2.ring), m2.matrix_unit(0, 1)), InvalidArgument);
}

TEST_CASE("restrict_to_class") {
  SUBCASE("single point is the identity transport") {
    const auto fi = fi_ring(Preorder::chain(1), dual_numbers(4));
    for (const auto& d : solve_jordan_derivations(fi.ring()).generators()) {
      CHECK(restrict_to_class(fi, d, 0).map.matrix() == d.matrix());
    }
  }
  SUBCASE("inner derivation by 1[a,b] vanishes on the class of a") {
    const auto z2 = zmod_ring(2);
    const auto fi = fi_ring(Preorder::chain(2), z2);
    const auto d = inner_derivation(fi.ring(), fi.entry(0, 1, z2.unit()));
    CHECK(restrict_to_class(fi, d, 0).map == AdditiveMap::zero(matrix_ring(z2, 1).ring));
  }
  SUBCASE("agrees with the corner restriction at e_x") {
    for (const auto& inst : instances()) {
      const auto fi = fi_ring(inst.p, inst.r);
      for (const auto& d : solve_jordan_derivations(fi.ring()).generators())
        for (std::size_t x = 0; x < fi.quotient().size(); ++x) {
          const auto dx = restrict_to_class(fi, d, x);
          const auto de = restrict_corner(d, fi.class_idempotent(x));
          CHECK(dx.map.matrix() == de.map.matrix());
          CHECK(check_map(dx.matrices.ring, dx.map, MapKind::JordanDerivation).ok);
        }
    }
  }
  const auto fi = fi_ring(Preorder::chain(2), zmod_ring(2));
  CHECK_THROWS_AS(restrict_to_class(fi, AdditiveMap::zero(fi.ring()), 2), InvalidArgument);
}

TEST_CASE("d is a derivation iff every class restriction is") {
  for (const auto& inst : instances()) {
    const auto fi = fi_ring(inst.p, inst.r);
    for (const auto& d : solve_jordan_derivations(fi.ring()).generators()) {
      bool all = true;
      for (std::size_t x = 0; x < fi.quotient().size(); ++x) {
        const auto dx = restrict_to_class(fi, d, x);
        all = all && check_map(dx.matrices.ring, dx.map, MapKind::Derivation).ok;
      }
      CHECK(check_map(fi.ring(), d, MapKind::Derivation).ok == all);
    }
  }
}

TEST_CASE("construct_dprime") {
  SUBCASE("zero map") {
    const auto fi = fi_ring(Preorder::chain(2), zmod_ring(4));
    CHECK(construct_dprime(fi.ring(), fi.class_idempotents(), AdditiveMap::zero(fi.ring())) ==
          AdditiveMap::zero(fi.ring()));
  }
  SUBCASE("recovers every Jordan generator of FI and is idempotent") {
    for (const auto& inst : instances()) {
      const auto fi = fi_ring(inst.p, inst.r);
      const auto es = fi.class_idempotents();
      for (const auto& d : solve_jordan_derivations(fi.ring()).generators()) {
        const auto dp = construct_dprime(fi.ring(), es, d);
        CHECK(dp == d);
        CHECK(construct_dprime(fi.ring(), es, dp) == dp);
        CHECK(check_map(fi.ring(), dp, MapKind::Derivation).ok);
      }
    }
  }
  SUBCASE("inner derivations of M_2(Z/3)") {
    std::mt19937_64 rng(12);
    const auto m3 = matrix_ring(zmod_ring(3), 2);
    const std::vector<RingElement> es{m3.matrix_unit(0, 0), m3.matrix_unit(1, 1)};
    for (int t = 0; t < 10; ++t) {
      const auto d = inner_derivation(m3.ring, random_element(m3.ring, rng));
      CHECK(construct_dprime(m3.ring, es, d) == d);
    }
  }
  const auto m3 = matrix_ring(zmod_ring(3), 2);
  const auto zero = AdditiveMap::zero(m3.ring);
  CHECK_THROWS_AS(construct_dprime(m3.ring, {m3.matrix_unit(0, 0)}, zero), InvalidArgument);
  CHECK_THROWS_AS(construct_dprime(m3.ring, {m3.matrix_unit(0, 0), m3.ring.unit()}, zero), InvalidArgument);
}

TEST_CASE("extend_isolated") {
  for (const auto& r : {zmod_ring(2), dual_numbers(2), zmod_ring(4)}) {
    const auto fi = fi_ring(Preorder::antichain(2), r);
    const auto elems = oracle::all_vectors(r.modulus(), r.rank() * r.rank());
    for (std::size_t x = 0; x < 2; ++x) {
      // every additive map of R: round trip, and status transfers both ways
      for (const auto& v : elems) {
        const auto dx = AdditiveMap::from_vector(r, ZmVector(r.modulus(), v));
        const auto ext = extend_isolated(fi, x, dx);
        const auto back = restrict_to_class(fi, ext, x);
        CHECK(back.map.matrix() == dx.matrix());
        for (auto kind : {MapKind::Derivation, MapKind::JordanDerivation}) {
          CHECK(check_map(fi.ring(), ext, kind).ok == check_map(r, dx, kind).ok);
        }
      }
    }
  }
  SUBCASE("derivation generators of the dual numbers extend to derivations") {
    const auto r = dual_numbers(2);
    const auto fi = fi_ring(Preorder::antichain(2), r);
    for (const auto& dx : solve_derivations(r).generators()) {
      CHECK(check_map(fi.ring(), extend_isolated(fi, 0, dx), MapKind::Derivation).ok);
    }
  }
  SUBCASE("an identity off-block breaks the Jordan property") {
    const auto r = zmod_ring(2);
    const auto fi = fi_ring(Preorder::antichain(2), r);
    const auto zero = AdditiveMap::zero(r);
    CHECK(check_map(r, zero, MapKind::JordanDerivation).ok);
    const auto with_id = extend_isolated(fi, 0, zero, OffBlock::Identity);
    CHECK_FALSE(check_map(fi.ring(), with_id, MapKind::JordanDerivation).ok);
    CHECK(restrict_to_class(fi, with_id, 0).map.matrix() == zero.matrix());
  }
  const auto chain = fi_ring(Preorder::chain(2), zmod_ring(2));
  CHECK_THROWS_AS(extend_isolated(chain, 0, AdditiveMap::zero(zmod_ring(2))), InvalidArgument);
  const auto cyc = fi_ring(Preorder::cycle(2), zmod_ring(2));
  CHECK_THROWS_AS(extend_isolated(cyc, 0, AdditiveMap::zero(zmod_ring(2))), InvalidArgument);
  const auto anti = fi_ring(Preorder::antichain(2), zmod_ring(2));
  CHECK_THROWS_AS(extend_isolated(anti, 0, AdditiveMap::zero(dual_numbers(2))), InvalidArgument);
}

TEST_CASE("bimodule faithfulness") {
  for (Residue m : {2, 4})
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t p = 1; p <= 3; ++p) {
        const auto f = bimodule_faithful(matrix_bimodule(zmod_ring(m), n, p));
        CHECK(f.left);
        CHECK(f.right);
      }
  SUBCASE("zero module") {
    const auto a = zmod_ring(3);
    const auto f = bimodule_faithful(Bimodule::build(a, a, 0, {}, {}));
    CHECK_FALSE(f.left);
    CHECK_FALSE(f.right);
  }
  SUBCASE("product ring acting through one factor") {
    const auto z2 = zmod_ring(2);
    const auto a = direct_product(z2, z2);
    const auto mod = Bimodule::build(a, z2, 1, {ZmVector(2, {1}), ZmVector(2, {0})}, {ZmVector(2, {1})});
    const auto f = bimodule_faithful(mod);
    CHECK_FALSE(f.left);
    CHECK(f.right);
    REQUIRE(f.left_witness.has_value());
    CHECK(*f.left_witness == ZmVector(2, {0, 1}));
  }
  SUBCASE("regular Z/4 module") {
    const auto z4 = zmod_ring(4);
    const auto mod = Bimodule::build(z4, z4, 1, {ZmVector(4, {1})}, {ZmVector(4, {1})});
    CHECK(bimodule_faithful(mod).left);
  }
}

TEST_CASE("theorem_verdict") {
  const auto z2 = zmod_ring(2);
  CHECK(theorem_verdict(Preorder::chain(2), z2).outcome == VerdictOutcome::AllJordanAreDerivations);
  const auto anti = theorem_verdict(Preorder::antichain(2), z2);
  CHECK(anti.outcome == VerdictOutcome::ConditionalOnCoefficientRing);
  CHECK(anti.isolated_elements == std::vector<std::size_t>{0, 1});
  CHECK(theorem_verdict(Preorder::cycle(2), z2).outcome == VerdictOutcome::AllJordanAreDerivations);

  SUBCASE("justification names partners and cited facts") {
    const auto v = theorem_verdict(Preorder::chain(2), z2);
    REQUIRE(v.justification.size() == 3);
    CHECK(v.justification[0].find("partner {1}") != std::string::npos);
    CHECK(v.justification[0].find("left=true right=true") != std::string::npos);
    CHECK(v.justification.back() == "no isolated elements");
  }
  SUBCASE("isolated two-cycle class next to an isolated point") {
    const auto p = Preorder::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}});
    const auto v = theorem_verdict(p, z2);
    CHECK(v.outcome == VerdictOutcome::ConditionalOnCoefficientRing);
    CHECK(v.isolated_classes == std::vector<std::size_t>{0, 1});
    CHECK(v.isolated_elements == std::vector<std::size_t>{2});
    CHECK(v.justification[0].find("M_2(R)") != std::string::npos);
  }
  CHECK_THROWS_AS(theorem_verdict(Preorder::chain(2), zero_product_ring(2, 1)), InvalidArgument);
  CHECK(to_string(VerdictOutcome::Unknown) == "Unknown");
}

TEST_CASE("cross_check") {
  SUBCASE("chain of three over Z/2") {
    const auto rep = cross_check(Preorder::chain(3), zmod_ring(2));
    CHECK(rep.fi_rank == 6);
    CHECK(rep.fi.equal);
    CHECK(rep.consistent);
  }
  SUBCASE("two-cycle over Z/2 matches the exhaustive classification") {
    const auto rep = cross_check(Preorder::cycle(2), zmod_ring(2));
    CHECK(rep.fi.equal);
    CHECK(rep.consistent);
    const auto truth = oracle::classify_all_maps(fi_ring(Preorder::cycle(2), zmod_ring(2)).ring());
    CHECK(truth.derivations.size() == truth.jordan.size());
    CHECK(rep.fi.jordan.cardinality() == truth.jordan.size());
  }
  SUBCASE("single point over Z/4") {
    const auto rep = cross_check(Preorder::chain(1), zmod_ring(4));
    CHECK(rep.verdict.outcome == VerdictOutcome::ConditionalOnCoefficientRing);
    const auto truth = oracle::classify_all_maps(zmod_ring(4));
    CHECK(rep.coefficients.equal == (truth.derivations.size() == truth.jordan.size()));
    CHECK(rep.consistent);
  }
  SUBCASE("budget refusal reports the required rank") {
    try {
      cross_check(Preorder::chain(3), dual_numbers(2), 8);
      FAIL("expected refusal");
    } catch (const BudgetExceeded& e) {
      CHECK(e.required() == 12);
      CHECK(e.budget() == 8);
    }
  }
}

TEST_CASE("identity suite") {
  SUBCASE("zero map") {
    const auto fi = fi_ring(Preorder::chain(2), dual_numbers(2));
    const auto rep = identity_suite(fi.ring(), fi.class_idempotents(), AdditiveMap::zero(fi.ring()), {}, &fi);
    CHECK(rep.all_passed());
    REQUIRE(rep.find("incidence-block"));
    CHECK(rep.find("incidence-block")->checked > 0);
  }
  SUBCASE("every Jordan generator of FI(chain of 3, Z/2)") {
    const auto fi = fi_ring(Preorder::chain(3), zmod_ring(2));
    for (const auto& d : solve_jordan_derivations(fi.ring()).generators()) {
      const auto rep = identity_suite(fi.ring(), fi.class_idempotents(), d, {}, &fi);
      for (const auto& o : rep.outcomes) {
        CAPTURE(o.name);
        CAPTURE(o.witness);
        CHECK(o.passed);
      }
      SuiteOptions random;
      random.mode = SuiteMode::Randomized;
      random.seed = 5;
      random.trials = 50;
      CHECK(identity_suite(fi.ring(), fi.class_idempotents(), d, random, &fi).all_passed());
    }
  }
  SUBCASE("ad_e12 on M_2(Z/3) including the derivation-only identity") {
    const auto m3 = matrix_ring(zmod_ring(3), 2);
    const auto d = inner_derivation(m3.ring, m3.matrix_unit(0, 1));
    const auto rep = identity_suite(m3.ring, {m3.matrix_unit(0, 0), m3.matrix_unit(1, 1)}, d);
    CHECK(rep.all_passed());
    const auto* cross = rep.find("derivation-cross-term");
    REQUIRE(cross);
    CHECK_FALSE(cross->skipped);
    CHECK(cross->checked > 0);
    CHECK(rep.find("incidence-block") == nullptr);
  }
  SUBCASE("e d(e) e has order dividing two") {
    for (const auto& inst : instances()) {
      const auto fi = fi_ring(inst.p, inst.r);
      for (const auto& d : solve_jordan_derivations(fi.ring()).generators())
        for (const auto& e : fi.class_idempotents()) {
          const auto ede = e * d(e) * e;
          CHECK(ede == -ede);
        }
    }
  }
  const auto z4 = zmod_ring(4);
  ZmMatrix two(4, 1, 1);
  two.set(0, 0, 2);
  CHECK_THROWS_AS(identity_suite(z4, {z4.unit()}, AdditiveMap(z4, two)), InvalidArgument);
  const auto m2 = matrix_ring(zmod_ring(2), 2);
  CHECK_THROWS_AS(identity_suite(m2.ring, {m2.matrix_unit(0, 0), m2.ring.unit()}, AdditiveMap::zero(m2.ring)),
                  InvalidArgument);
}
