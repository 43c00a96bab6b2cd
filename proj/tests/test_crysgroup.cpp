#include "doctest.h"

#include <random>

#include "flatcollapse/crystal_group.hpp"
#include "oracles.hpp"

using namespace fc_test;

TEST_SUITE("crysgroup") {

TEST_CASE("fixture point groups") {
  CHECK(fixture("T2").order() == 1);
  const CrystGroup kb = fixture("KB");
  REQUIRE(kb.order() == 2);
  CHECK(kb.translation(1) == q({"1/2", "0"}));
  CHECK(fixture("HEX3").order() == 3);
  CHECK(fixture("HW").order() == 4);
}

TEST_CASE("group invariants hold on every fixture") {
  for (const char* name : {"T2", "KB", "HEX3", "HW"}) {
    const CrystGroup g = fixture(name);
    const MatQ gram = g.gram().matrix();
    for (std::size_t i = 0; i < g.order(); ++i) {
      const MatQ a = g.element_q(i);
      CHECK(a.transpose() * gram * a == gram);
      CHECK(is_unimodular(g.element(i)));
      for (const auto& x : g.translation(i)) CHECK((x >= 0 && x < 1));
      const std::size_t inv = g.inverse(i);
      CHECK(g.element(i) * g.element(inv) == MatZ::identity(g.dim()));
      CHECK(reduce_mod_one(negate(mat_vec(g.element_q(inv), g.translation(i)))) ==
            g.translation(inv));
      for (std::size_t j = 0; j < g.order(); ++j) {
        const std::size_t ij = g.multiply(i, j);
        CHECK(g.element(ij) == g.element(i) * g.element(j));
        CHECK(reduce_mod_one(add(mat_vec(a, g.translation(j)), g.translation(i))) == g.translation(ij));
      }
    }
  }
}

TEST_CASE("torsion verdicts") {
  CHECK(is_torsion_free(fixture("T2")).torsion_free);
  CHECK(is_torsion_free(fixture("KB")).torsion_free);
  CHECK(is_torsion_free(fixture("HW")).torsion_free);
  const CrystGroup hex = fixture("HEX3");
  auto v = is_torsion_free(hex);
  CHECK_FALSE(v.torsion_free);
  REQUIRE(v.witness);
  CHECK(hex.translation(v.witness->element) == q({"0", "0"}));
  const VecQ x = v.witness->fixed_point;
  VecQ w = hex.translation(v.witness->element);
  for (std::size_t k = 0; k < 2; ++k) w[k] += Rat(v.witness->lattice_shift[k]);
  CHECK(add(mat_vec(hex.element_q(v.witness->element), x), w) == x);
  for (const char* name : {"T2", "KB", "HEX3", "HW"}) {
    const CrystGroup g = fixture(name);
    CHECK(brute_force_has_fixed_point(g) == !is_torsion_free(g).torsion_free);
  }
}

TEST_CASE("torus action") {
  const CrystGroup kb = fixture("KB");
  const MatZ a = z({{1, 0}, {0, -1}});
  CHECK(torus_action(kb, a, q({"0", "0"})) == q({"1/2", "0"}));
  const VecQ once = torus_action(kb, a, q({"0", "1/4"}));
  CHECK(once == q({"1/2", "3/4"}));
  CHECK(torus_action(kb, a, once) == q({"0", "1/4"}));
  CHECK(torus_action(kb, MatZ::identity(2), q({"1/3", "2/3"})) == q({"1/3", "2/3"}));
  CHECK_THROWS_AS(torus_action(kb, z({{-1, 0}, {0, 1}}), q({"0", "0"})), Error);
}

TEST_CASE("torus action is free for Bieberbach fixtures") {
  std::mt19937_64 rng(13);
  for (const char* name : {"KB", "HW"}) {
    const CrystGroup g = fixture(name);
    for (int t = 0; t < 200; ++t) {
      VecQ x;
      for (std::size_t k = 0; k < g.dim(); ++k) x.push_back(make_rat(uniform(rng, 0, 11), 12));
      for (std::size_t i = 1; i < g.order(); ++i) CHECK(torus_action(g, g.element(i), x) != x);
    }
  }
}

TEST_CASE("fixed data") {
  const CrystGroup kb = fixture("KB");
  auto id = fixed_data(kb, MatZ::identity(2));
  CHECK(id.kernel == RatSubspace::whole(2));
  CHECK(id.image.dim() == 0);
  CHECK(id.projector == MatQ::identity(2));
  auto f = fixed_data(kb, z({{1, 0}, {0, -1}}));
  CHECK(f.kernel == span_of(2, {0}));
  CHECK(f.image == span_of(2, {1}));
  CHECK(f.projector == to_rational(z({{1, 0}, {0, 0}})));
  const CrystGroup hex = fixture("HEX3");
  auto h = fixed_data(hex, hex.element(1));
  CHECK(h.kernel.dim() == 0);
  CHECK(h.image == RatSubspace::whole(2));
  CHECK(is_zero_matrix(h.projector));

  for (const char* name : {"KB", "HEX3", "HW"}) {
    const CrystGroup g = fixture(name);
    const MatQ gram = g.gram().matrix();
    for (std::size_t i = 0; i < g.order(); ++i) {
      auto d = fixed_data(g, g.element(i));
      MatQ avg(g.dim(), g.dim());
      MatQ power = MatQ::identity(g.dim());
      for (int j = 0; j < d.order; ++j) {
        avg = avg + power;
        power = power * g.element_q(i);
      }
      CHECK(scaled(d.projector, Rat(d.order)) == avg);
      CHECK(d.projector * d.projector == d.projector);
      CHECK(gram * d.projector == (gram * d.projector).transpose());
    }
  }
}

TEST_CASE("invariant complements") {
  const CrystGroup kb = fixture("KB");
  CHECK(invariant_complement(kb, span_of(2, {0})) == span_of(2, {1}));
  const CrystGroup hw = fixture("HW");
  CHECK(invariant_complement(hw, span_of(3, {0})) == span_of(3, {1, 2}));
  std::mt19937_64 rng(6);
  const CrystGroup t2 = fixture("T2");
  for (int t = 0; t < 10; ++t) {
    const RatSubspace w = RatSubspace::from_spanning(2, {random_vec(rng, 2, 5)});
    const RatSubspace c = invariant_complement(t2, w);
    CHECK(c.dim() + w.dim() == 2);
    CHECK(intersection(c, w).dim() == 0);
  }
  for (const auto& w : {span_of(3, {0}), span_of(3, {1, 2}), span_of(3, {0, 2})}) {
    const RatSubspace c = invariant_complement(hw, w);
    CHECK(is_group_invariant(hw, c));
    CHECK(c.dim() + w.dim() == 3);
    CHECK(intersection(c, w).dim() == 0);
  }
  CHECK_THROWS_AS(require_invariant(kb, RatSubspace::from_spanning(2, {q({"1", "1"})})), Error);
}

TEST_CASE("invalid groups are rejected") {
  const GramForm id2 = GramForm::identity(2);
  CHECK_THROWS_AS(CrystGroup::from_generators(id2, {{z({{1, 0}, {0, -1}}), q({"1/3", "0"})}}), Error);
  try {
    CrystGroup::from_generators(id2, {{z({{1, 0}, {0, -1}}), q({"1/3", "0"})}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCocycleViolation);
  }
  try {
    CrystGroup::from_generators(id2, {{z({{1, 1}, {0, 1}}), q({"0", "0"})}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotGramOrthogonal);
  }
  try {
    CrystGroup::from_generators(id2, {{z({{2, 0}, {0, 1}}), q({"0", "0"})}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotGramOrthogonal);
  }
  try {
    CrystGroup::from_generators(id2, {{z({{0, 1}, {1, 0}}), q({"0", "0"})}, {z({{-1, 0}, {0, 1}}), q({"0", "0"})}}, 4);
    FAIL("bound not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPointGroupBoundExceeded);
  }
  CHECK(CrystGroup::from_generators(id2, {{z({{0, 1}, {1, 0}}), q({"0", "0"})}, {z({{-1, 0}, {0, 1}}), q({"0", "0"})}}).order() == 8);
}

TEST_CASE("basis changes conjugate the group") {
  std::mt19937_64 rng(31);
  for (const char* name : {"KB", "HEX3", "HW"}) {
    const CrystGroup g = fixture(name);
    for (int t = 0; t < 5; ++t) {
      const MatZ u = random_unimodular(rng, g.dim());
      const CrystGroup h = change_basis(g, u);
      CHECK(h.order() == g.order());
      CHECK(is_torsion_free(h).torsion_free == is_torsion_free(g).torsion_free);
    }
  }
}

}  // TEST_SUITE
