#include "doctest.h"

#include <cmath>
#include <random>

#include "flatcollapse/crystal_group.hpp"
#include "support.hpp"

using namespace fc_test;

namespace {

FieldPtr sqrt2() {
  static FieldPtr f = std::make_shared<const NumberField>(Poly::from_ints({-2, 0, 1}), Rat(1), Rat(2));
  return f;
}

NFElem nf(long a, long b) { return NFElem(sqrt2(), {Rat(a), Rat(b)}); }

VecNF random_nf_vec(std::mt19937_64& rng, std::size_t n, bool rational) {
  VecNF v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(nf(uniform(rng, -3, 3), rational ? 0 : uniform(rng, -3, 3)));
  return v;
}

RatSubspace random_rat_subspace(std::mt19937_64& rng, std::size_t n) {
  std::vector<VecQ> vs;
  const long k = uniform(rng, 0, static_cast<long>(n));
  for (long i = 0; i < k; ++i) vs.push_back(random_vec(rng, n, 4));
  return RatSubspace::from_spanning(n, vs);
}

}  // namespace

TEST_SUITE("latgeo") {

TEST_CASE("sublattice from generators") {
  auto a = sublattice_from_generators(2, {q({"1", "0"}), q({"0", "1"}), q({"1/2", "1/2"})});
  REQUIRE(a.rank() == 2);
  CHECK(a.basis()[0] == q({"1/2", "1/2"}));
  CHECK(a.basis()[1] == q({"0", "1"}));
  CHECK(a.covolume_sq(GramForm::identity(2)) == make_rat(1, 4));
  for (const auto& g : {q({"1", "0"}), q({"0", "1"}), q({"1/2", "1/2"})}) CHECK(lattice_membership(g, a));

  auto b = sublattice_from_generators(2, {q({"2", "0"})});
  REQUIRE(b.rank() == 1);
  CHECK(b.basis()[0] == q({"2", "0"}));
  CHECK(sublattice_from_generators(2, {q({"0", "0"})}).rank() == 0);
}

TEST_CASE("lattice membership examples") {
  auto diag = sublattice_from_generators(2, {q({"1", "1"})});
  auto c = lattice_membership(q({"3", "3"}), diag);
  REQUIRE(c);
  CHECK((*c)[0] == 3);
  CHECK_FALSE(lattice_membership(q({"1/2", "0"}), standard_lattice(2)));
  auto half = sublattice_from_generators(2, {q({"1/2", "1/2"}), q({"0", "1"})});
  auto d = lattice_membership(q({"1", "0"}), half);
  REQUIRE(d);
  CHECK((*d)[0] == 2);
  CHECK((*d)[1] == -1);
}

TEST_CASE("lattice membership agrees with enumeration") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<VecQ> gens;
    for (long i = 0; i < uniform(rng, 1, 3); ++i) {
      VecQ g;
      for (std::size_t j = 0; j < n; ++j) g.push_back(make_rat(uniform(rng, -3, 3), uniform(rng, 1, 2)));
      gens.push_back(g);
    }
    const Sublattice lat = sublattice_from_generators(n, gens);
    VecQ target;
    for (std::size_t j = 0; j < n; ++j) target.push_back(make_rat(uniform(rng, -6, 6), uniform(rng, 1, 2)));
    bool found = false;
    const auto basis = lat.basis();
    std::vector<long> c(basis.size(), -12);
    while (!found && !basis.empty()) {
      VecQ s = zero_vector(n);
      for (std::size_t i = 0; i < basis.size(); ++i) s = add(s, scale(basis[i], Rat(c[i])));
      found = s == target;
      std::size_t k = 0;
      while (k < c.size() && c[k] == 12) c[k++] = -12;
      if (k == c.size()) break;
      ++c[k];
    }
    if (basis.empty()) found = is_zero_vector(target);
    CHECK(lattice_membership(target, lat).has_value() == found);
  }
}

TEST_CASE("subspace lattices and adapted bases") {
  auto a = subspace_lattice(RatSubspace::from_spanning(2, {q({"1", "1"})}));
  CHECK(a.l_generated);
  REQUIRE(a.lattice.rank() == 1);
  CHECK(a.lattice.basis()[0] == q({"1", "1"}));
  auto b = subspace_lattice(RatSubspace::from_spanning(2, {q({"1/2", "1/2"})}));
  CHECK(b.lattice.basis()[0] == q({"1", "1"}));
  CHECK(subspace_lattice(RatSubspace(2)).lattice.rank() == 0);

  auto ad = adapted_zbasis(RatSubspace::from_spanning(2, {q({"1", "1"})}));
  CHECK(ad.k == 1);
  CHECK(ad.basis.row(0) == VecZ{1, 1});
  CHECK(abs(determinant(ad.basis)) == 1);
  CHECK(adapted_zbasis(RatSubspace(3)).k == 0);
  CHECK(abs(determinant(adapted_zbasis(RatSubspace::whole(3)).basis)) == 1);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 5));
    const RatSubspace w = random_rat_subspace(rng, n);
    const AdaptedBasis ab = adapted_zbasis(w);
    CHECK(abs(determinant(ab.basis)) == 1);
    CHECK(ab.k == w.dim());
    for (std::size_t i = 0; i < ab.k; ++i) CHECK(w.contains(to_rational(ab.basis.row(i))));
  }
}

TEST_CASE("intersections of rational subspaces stay lattice generated") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
    const RatSubspace a = random_rat_subspace(rng, n), b = random_rat_subspace(rng, n);
    const RatSubspace c = intersection(a, b);
    CHECK(subspace_lattice(c).lattice.rank() == c.dim());
    CHECK(a.contains(c));
    CHECK(b.contains(c));
    CHECK(sum(a, b).dim() + c.dim() == a.dim() + b.dim());
  }
}

TEST_CASE("projected lattice examples") {
  auto a = projected_lattice(span_of(2, {1}), GramForm::identity(2));
  REQUIRE(a.rank() == 1);
  CHECK(a.basis()[0] == q({"0", "1"}));
  auto b = projected_lattice(RatSubspace::from_spanning(2, {q({"1", "-1"})}), GramForm::identity(2));
  REQUIRE(b.rank() == 1);
  CHECK(b.basis()[0] == q({"1/2", "-1/2"}));
  GramForm hex(MatQ{{Rat(1), make_rat(1, 2)}, {make_rat(1, 2), Rat(1)}});
  auto c = projected_lattice(span_of(2, {0}), hex);
  REQUIRE(c.rank() == 1);
  CHECK(c.basis()[0] == q({"1/2", "0"}));
}

TEST_CASE("closure examples") {
  const GramForm id2 = GramForm::identity(2);
  auto line = AlgSubspace::from_spanning(sqrt2(), 2, {{nf(1, 0), nf(0, 1)}});
  auto c = l_closure(line, id2);
  CHECK(c.closure == RatSubspace::whole(2));
  CHECK(c.k_part.dim() == 1);
  CHECK(c.rational_part.dim() == 0);

  const RatSubspace diag = RatSubspace::from_spanning(2, {q({"1", "1"})});
  auto r = l_closure(AlgSubspace::from_rational(sqrt2(), diag), id2);
  CHECK(r.closure == diag);
  CHECK(r.k_part.dim() == 0);

  auto line3 = AlgSubspace::from_spanning(sqrt2(), 3, {{nf(1, 0), nf(0, 1), nf(0, 0)}});
  auto c3 = l_closure(line3, GramForm::identity(3));
  CHECK(c3.closure == span_of(3, {0, 1}));
  REQUIRE(c3.k_part.dim() == 1);
  // K is orthogonal to W inside the closure.
  const VecNF k = c3.k_part.vectors()[0];
  CHECK((k[0] * nf(1, 0) + k[1] * nf(0, 1)).is_zero());
  CHECK(k[2].is_zero());

  // The adapted flag: w, v, u vectors together are a Z-basis of Z^n.
  MatZ flag;
  for (const auto& v : c3.w_vectors) flag.append_row(v);
  for (const auto& v : c3.v_vectors) flag.append_row(v);
  for (const auto& v : c3.u_vectors) flag.append_row(v);
  CHECK(flag.rows() == 3);
  CHECK(abs(determinant(flag)) == 1);
}

TEST_CASE("closure is idempotent, monotone and minimal") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
    const GramForm g = GramForm::identity(n);
    const VecNF v1 = random_nf_vec(rng, n, uniform(rng, 0, 4) == 0);
    const VecNF v2 = random_nf_vec(rng, n, false);
    const AlgSubspace w1 = AlgSubspace::from_spanning(sqrt2(), n, {v1});
    const AlgSubspace w2 = AlgSubspace::from_spanning(sqrt2(), n, {v1, v2});
    const RatSubspace c1 = l_closure(w1, g).closure;
    const RatSubspace c2 = l_closure(w2, g).closure;
    CHECK(l_closure(AlgSubspace::from_rational(sqrt2(), c1), g).closure == c1);
    CHECK(c2.contains(c1));
    CHECK(AlgSubspace::from_rational(sqrt2(), c1).contains(w1));

    // Covectors vanishing on W over the field vanish on the closure.
    std::vector<VecQ> comp_rows;
    for (const auto& v : w2.vectors())
      for (const auto& c : nf_components(v, sqrt2())) comp_rows.push_back(c);
    MatQ rows;
    for (const auto& r : comp_rows) rows.append_row(r);
    const MatQ ann = nullspace(rows);
    for (int s = 0; s < 3; ++s) {
      VecQ phi = zero_vector(n);
      for (std::size_t i = 0; i < ann.rows(); ++i) phi = add(phi, scale(ann.row(i), random_rat(rng, 5)));
      for (const auto& v : w2.vectors()) {
        NFElem dot;
        for (std::size_t i = 0; i < n; ++i) dot += NFElem::rational(sqrt2(), phi[i]) * v[i];
        CHECK(dot.is_zero());
      }
      for (const auto& b : c2.vectors()) {
        Rat dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += phi[i] * b[i];
        CHECK(dot == 0);
      }
    }
  }
}

TEST_CASE("closure of an invariant subspace is invariant") {
  const CrystGroup kb = fixture("KB");
  for (std::size_t axis : {0u, 1u}) {
    auto w = AlgSubspace::from_rational(sqrt2(), span_of(2, {axis}));
    const RatSubspace c = l_closure(w, kb.gram()).closure;
    for (std::size_t i = 0; i < kb.order(); ++i) CHECK(is_invariant(c, kb.element_q(i)));
  }
  const CrystGroup t2 = fixture("T2");
  const auto line = fixture_subspace("LINE_IRR", 2);
  CHECK_FALSE(line.rational);
  CHECK(l_closure(line.algebraic, t2.gram()).closure == RatSubspace::whole(2));
}

TEST_CASE("projected lattice points are dense in K") {
  auto line = AlgSubspace::from_spanning(sqrt2(), 2, {{nf(1, 0), nf(0, 1)}});
  const auto cl = l_closure(line, GramForm::identity(2));
  const auto kv = nf_embed(cl.k_part.vectors()[0]);
  const double len = std::hypot(kv[0], kv[1]);
  std::vector<double> proj;
  for (int a = -40; a <= 40; ++a)
    for (int b = -40; b <= 40; ++b) proj.push_back((a * kv[0] + b * kv[1]) / len);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double target = unit(rng);
    double best = 1e9;
    for (double p : proj) best = std::min(best, std::fabs(p - target));
    CHECK(best < 0.05);
  }
}

TEST_CASE("gram form validation") {
  CHECK_THROWS_AS(GramForm(MatQ{{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}), Error);
  CHECK_THROWS_AS(GramForm(MatQ{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}), Error);
}

}  // TEST_SUITE
