#include <doctest.h>

#include <algorithm>
#include <random>

#include "jderiv/zmod.hpp"
#include "oracles.hpp"

using namespace jderiv;

namespace {

ZmMatrix random_matrix(std::mt19937_64& rng, Residue m, std::size_t rows, std::size_t cols) {
  ZmMatrix a(m, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a.set(i, j, static_cast<Residue>(rng() % m));
  return a;
}

std::vector<oracle::Vec> rows_of(const ZmMatrix& a) {
  std::vector<oracle::Vec> out;
  for (const auto& r : a.row_vectors()) out.emplace_back(r.entries().begin(), r.entries().end());
  return out;
}

}  // namespace

TEST_CASE("residue helpers") {
  CHECK(reduce(-1, 6) == 5);
  CHECK(gcd_mod(4, 6) == 2);
  CHECK(gcd_mod(0, 6) == 6);
  CHECK(inverse_mod(5, 6) == 5);
  CHECK_FALSE(inverse_mod(2, 6).has_value());
  for (Residue m : {2, 4, 6, 12, 30}) {
    for (Residue a = 1; a < m; ++a) {
      const Residue u = normalizing_unit(a, m);
      CHECK(inverse_mod(u, m).has_value());
      CHECK(mul_mod(u, a, m) == gcd_mod(a, m));
    }
  }
  CHECK_THROWS_AS(normalizing_unit(0, 6), InvalidArgument);
  CHECK_THROWS_AS(check_modulus(1), InvalidArgument);
  CHECK_THROWS_AS(check_modulus(kMaxModulus + 1), InvalidArgument);
}

TEST_CASE("vector and matrix arithmetic") {
  ZmVector v(4, {1, 2, 3});
  ZmVector w(4, {3, 3, 3});
  CHECK((v + w) == ZmVector(4, {0, 1, 2}));
  CHECK((v - w) == ZmVector(4, {2, 3, 0}));
  CHECK((-v) == ZmVector(4, {3, 2, 1}));
  CHECK(ZmVector(4, {-1}) == ZmVector(4, {3}));
  CHECK(ZmVector(4, {3}).size() == 1);
  CHECK_THROWS_AS(v + ZmVector(5, {1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(v + ZmVector(4, {1, 2}), InvalidArgument);

  const ZmMatrix a = ZmMatrix::from_rows(5, {{1, 2}, {3, 4}});
  CHECK(a * ZmVector(5, {1, 1}) == ZmVector(5, {3, 2}));
  CHECK(a.transpose().at(0, 1) == 3);
  CHECK(a * ZmMatrix::identity(5, 2) == a);
}

TEST_CASE("howell form on small inputs") {
  SUBCASE("duplicate rows collapse") {
    const auto b = howell_form(ZmMatrix::from_rows(2, {{1, 1}, {1, 1}}));
    REQUIRE(b.size() == 1);
    CHECK(b.generators()[0] == ZmVector(2, {1, 1}));
  }
  SUBCASE("zero divisor pivot is kept") {
    const auto b = howell_form(ZmMatrix::from_rows(4, {{2}}));
    REQUIRE(b.size() == 1);
    CHECK(b.generators()[0] == ZmVector(4, {2}));
    CHECK(oracle::span_of(b) == oracle::span(4, 1, {{2}}));
  }
  SUBCASE("unit pivot is normalised") {
    const auto b = howell_form(ZmMatrix::from_rows(5, {{2, 4}}));
    REQUIRE(b.size() == 1);
    CHECK(b.generators()[0] == ZmVector(5, {1, 2}));
    CHECK(oracle::span(5, 2, {{2, 4}}) == oracle::span(5, 2, {{1, 2}}));
  }
  SUBCASE("annihilator rows are added") {
    // span of (2, 1) over Z/4 contains 2*(2,1) = (0, 2)
    const auto b = howell_form(ZmMatrix::from_rows(4, {{2, 1}}));
    CHECK(b.size() == 2);
    CHECK(b.contains(ZmVector(4, {0, 2})));
    CHECK(b.cardinality() == 4);
  }
}

TEST_CASE("kernel examples") {
  const auto k1 = kernel(ZmMatrix::from_rows(2, {{1, 1}}));
  REQUIRE(k1.size() == 1);
  CHECK(k1.generators()[0] == ZmVector(2, {1, 1}));
  CHECK(oracle::span_of(k1) == oracle::kernel(ZmMatrix::from_rows(2, {{1, 1}})));

  for (Residue m : {2, 3, 4, 6}) CHECK(kernel(ZmMatrix::identity(m, 3)).is_trivial());

  const auto k2 = kernel(ZmMatrix::from_rows(4, {{2}}));
  REQUIRE(k2.size() == 1);
  CHECK(k2.generators()[0] == ZmVector(4, {2}));
}

TEST_CASE("membership, equality and cardinality") {
  const auto b = howell_form(ZmMatrix::from_rows(2, {{1, 1}}));
  CHECK(subgroup_contains(b, ZmVector(2, {1, 1})));
  CHECK_FALSE(subgroup_contains(b, ZmVector(2, {1, 0})));
  const SubgroupBasis t1(3, 2), t2(3, 2);
  CHECK(subgroup_equal(t1, t2));
  CHECK(subgroup_cardinality(t1) == 1);
  CHECK(subgroup_cardinality(howell_form(ZmMatrix::from_rows(4, {{2}}))) == 2);
  CHECK_THROWS_AS(subgroup_contains(b, ZmVector(3, {1, 1})), InvalidArgument);
  CHECK_THROWS_AS(subgroup_equal(t1, SubgroupBasis(3, 3)), InvalidArgument);
  CHECK_THROWS_AS(subgroup_equal(t1, SubgroupBasis(2, 2)), InvalidArgument);
}

TEST_CASE("howell form agrees with enumeration") {
  std::mt19937_64 rng(7);
  for (Residue m : {2, 3, 4, 5, 6, 8, 9, 12}) {
    for (std::size_t dim = 1; dim <= 3; ++dim) {
      for (int trial = 0; trial < 25; ++trial) {
        const std::size_t rows = 1 + rng() % 4;
        const ZmMatrix a = random_matrix(rng, m, rows, dim);
        const SubgroupBasis b = howell_form(a);
        const auto expected = oracle::span(m, dim, rows_of(a));
        CAPTURE(m);
        CAPTURE(dim);
        CHECK(oracle::span_of(b) == expected);
        CHECK(b.cardinality() == expected.size());
        for (const auto& v : oracle::all_vectors(m, dim)) {
          CHECK(b.contains(ZmVector(m, v)) == (expected.count(v) == 1));
        }
        // idempotence
        CHECK(howell_form(m, dim, b.generators()) == b);
      }
    }
  }
}

TEST_CASE("canonical under row permutation and unit scaling") {
  std::mt19937_64 rng(11);
  for (Residue m : {4, 6, 9, 10}) {
    for (int trial = 0; trial < 40; ++trial) {
      const ZmMatrix a = random_matrix(rng, m, 4, 4);
      auto rows = a.row_vectors();
      std::shuffle(rows.begin(), rows.end(), rng);
      for (auto& r : rows) {
        Residue u;
        do u = static_cast<Residue>(rng() % m);
        while (!inverse_mod(u, m));
        r *= u;
      }
      rows.push_back(rows[0] + rows[1]);
      CHECK(howell_form(m, 4, rows) == howell_form(a));
    }
  }
}

TEST_CASE("kernel soundness and completeness") {
  std::mt19937_64 rng(3);
  for (Residue m : {2, 3, 4, 6, 8}) {
    for (int trial = 0; trial < 30; ++trial) {
      const ZmMatrix a = random_matrix(rng, m, 1 + rng() % 3, 1 + rng() % 4);
      const SubgroupBasis k = kernel(a);
      for (const auto& g : k.generators()) CHECK((a * g).is_zero());
      CHECK(oracle::span_of(k) == oracle::kernel(a));
    }
  }
}

TEST_CASE("solve_left finds combinations") {
  std::mt19937_64 rng(5);
  for (Residue m : {4, 6, 12}) {
    for (int trial = 0; trial < 30; ++trial) {
      const ZmMatrix a = random_matrix(rng, m, 3, 3);
      const auto rows = a.row_vectors();
      for (const auto& target : oracle::all_vectors(m, 3)) {
        const ZmVector t(m, target);
        const auto x = solve_left(m, 3, rows, t);
        CHECK(x.has_value() == howell_form(a).contains(t));
        if (x) CHECK(a.transpose() * *x == t);
      }
    }
  }
}

TEST_CASE("accumulator matches a one-shot howell form") {
  std::mt19937_64 rng(13);
  for (Residue m : {2, 4, 6}) {
    const ZmMatrix a = random_matrix(rng, m, 50, 6);
    RowSpanAccumulator acc(m, 6, 7);
    for (const auto& r : a.row_vectors()) acc.add(r);
    CHECK(acc.rows_seen() == 50);
    CHECK(acc.basis() == howell_form(a));
  }
}
