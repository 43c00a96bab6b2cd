#include "flatcollapse/foliation.hpp"

#include <set>

#include "flatcollapse/collapse.hpp"
#include "flatcollapse/normal_form.hpp"
#include "flatcollapse/representation.hpp"

namespace flatcollapse {

namespace {

struct Frame {
  RatSubspace w_perp;
  MatQ p;                  // projector onto w_perp
  std::vector<VecQ> cols;  // p applied to the standard basis
};

Frame make_frame(const CrystGroup& g, const RatSubspace& w) {
  require_invariant(g, w);
  Frame f;
  f.w_perp = orthogonal_complement(w, g.gram());
  f.p = projector(f.w_perp, g.gram());
  for (std::size_t i = 0; i < g.dim(); ++i) f.cols.push_back(f.p.col(i));
  return f;
}

MatQ minus_identity(const MatQ& a) {
  MatQ m = a;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1;
  return m;
}

// Restriction of A to W encoded by the images of the canonical basis of W.
std::vector<VecQ> restriction_key(const MatQ& a, const RatSubspace& w) {
  std::vector<VecQ> key;
  for (std::size_t i = 0; i < w.dim(); ++i) key.push_back(mat_vec(a, w.basis().row(i)));
  return key;
}

Rat exact_sqrt_or_throw(const Rat& x) {
  Int num = x.get_num(), den = x.get_den();
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (rn * rn != num || rd * rd != den)
    throw Error(ErrorCode::kValidationFailed, "volume ratio is not a perfect square");
  return make_rat(rn, rd);
}

// Leaves of W in terms of W-perp: x in W-perp for the G-orthogonal lift.
Sublattice z_cap(const RatSubspace& w) { return subspace_lattice(w).lattice; }

}  // namespace

LeafData leaf_group(const CrystGroup& g, const RatSubspace& w, const VecQ& u) {
  if (u.size() != g.dim()) throw Error(ErrorCode::kInvalidArgument, "base point dimension mismatch");
  const Frame f = make_frame(g, w);
  LeafData leaf;
  leaf.u = u;
  std::vector<VecQ> lattice_gens = z_cap(w).basis();
  std::set<std::vector<VecQ>> restrictions;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const MatQ& a = g.element_q(i);
    const VecQ base = add(mat_vec(minus_identity(a), u), g.translation(i));
    const auto ell = integer_combination(f.cols, negate(mat_vec(f.p, base)));
    if (!ell) continue;
    leaf.holonomy.push_back({i, *ell});
    restrictions.insert(restriction_key(a, w));
    if (acts_trivially_on(a, w)) lattice_gens.push_back(add(base, to_rational(*ell)));
  }
  leaf.leaf_lattice = sublattice_from_generators(g.dim(), lattice_gens);
  leaf.holonomy_order = restrictions.size();
  const Rat h(static_cast<long>(leaf.holonomy_order));
  leaf.vol_sq = leaf.leaf_lattice.covolume_sq(g.gram()) / (h * h);
  return leaf;
}

bool same_leaf(const CrystGroup& g, const RatSubspace& w, const VecQ& u, const VecQ& u2) {
  const Frame f = make_frame(g, w);
  for (std::size_t i = 0; i < g.order(); ++i) {
    const VecQ d = sub(add(mat_vec(g.element_q(i), u), g.translation(i)), u2);
    if (integer_combination(f.cols, negate(mat_vec(f.p, d)))) return true;
  }
  return false;
}

std::vector<std::size_t> principal_holonomy(const CrystGroup& g, const RatSubspace& w) {
  const Frame f = make_frame(g, w);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (!acts_trivially_on(g.element_q(i), f.w_perp)) continue;
    if (integer_combination(f.cols, negate(mat_vec(f.p, g.translation(i))))) out.push_back(i);
  }
  return out;
}

LeafClass classify_leaf(const CrystGroup& g, const RatSubspace& w, const VecQ& u) {
  require_invariant(g, w);
  if (!is_torsion_free(g).torsion_free)
    throw Error(ErrorCode::kNotBieberbach, "leaf classification requires a torsion-free group");
  const RatSubspace w_perp = orthogonal_complement(w, g.gram());
  const LeafData leaf = leaf_group(g, w, u);
  LeafClass out;
  out.vol_sq = leaf.vol_sq;
  for (const auto& h : leaf.holonomy)
    if (!acts_trivially_on(g.element_q(h.element), w_perp)) out.principal = false;

  std::set<std::vector<VecQ>> restrictions;
  for (auto i : principal_holonomy(g, w)) restrictions.insert(restriction_key(g.element_q(i), w));
  const Rat h(static_cast<long>(restrictions.size()));
  out.principal_vol_sq = z_cap(w).covolume_sq(g.gram()) / (h * h);

  const Rat ratio = exact_sqrt_or_throw(out.principal_vol_sq / out.vol_sq);
  if (!is_integer(ratio)) throw Error(ErrorCode::kValidationFailed, "covering index is not an integer");
  out.covering_index = ratio.get_num();
  if (out.principal != (out.covering_index == 1))
    throw Error(ErrorCode::kValidationFailed, "leaf volume disagrees with the holonomy classification");
  return out;
}

SingularLocus singular_leaf_locus(const CrystGroup& g, const RatSubspace& w) {
  const Frame f = make_frame(g, w);
  const std::size_t n = g.dim();
  SingularLocus locus;
  for (std::size_t i = 1; i < g.order(); ++i) {
    const MatQ& a = g.element_q(i);
    if (acts_trivially_on(a, f.w_perp)) continue;
    const MatQ am = minus_identity(a);
    // Covectors vanishing on Im(A - Id).
    const MatQ phi = nullspace(am.transpose());
    const MatQ m = phi * f.p;
    std::vector<VecQ> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(m.col(j));
    const auto ell = integer_combination(gens, negate(mat_vec(m, g.translation(i))));
    if (!ell) continue;

    // S_A: inverse of (A - Id) on the G-orthogonal complement of its kernel.
    const MatQ ker_rows = nullspace(am);
    const RatSubspace ker = ker_rows.rows() == 0 ? RatSubspace(n) : RatSubspace::from_rows(ker_rows);
    const MatQ pk = projector(ker, g.gram());
    auto s_a = [&](const VecQ& y) {
      const auto x = solve(am, y);
      if (!x) throw Error(ErrorCode::kValidationFailed, "vector outside Im(A - Id)");
      return sub(*x, mat_vec(pk, *x));
    };

    Stratum st;
    st.element = i;
    st.direction = preimage(am, w);
    st.offset = negate(s_a(mat_vec(f.p, add(g.translation(i), to_rational(*ell)))));
    const MatQ hom = nullspace(m);
    std::vector<VecQ> per;
    if (hom.rows() > 0) {
      const Sublattice sol = subspace_lattice(RatSubspace::from_rows(hom)).lattice;
      for (const auto& lam : sol.basis()) per.push_back(s_a(mat_vec(f.p, lam)));
    }
    st.offset_lattice = sublattice_from_generators(n, per);
    if (st.direction.dim() >= n) throw Error(ErrorCode::kValidationFailed, "stratum direction is not proper");
    locus.strata.push_back(std::move(st));
  }
  return locus;
}

bool on_singular_locus(const SingularLocus& locus, const VecQ& u) {
  for (const auto& st : locus.strata) {
    const MatQ ann = st.direction.annihilator();
    const VecQ t = mat_vec(ann, sub(u, st.offset));
    std::vector<VecQ> gens;
    for (const auto& b : st.offset_lattice.basis()) gens.push_back(mat_vec(ann, b));
    if (gens.empty()) {
      if (is_zero_vector(t)) return true;
      continue;
    }
    if (integer_combination(gens, t)) return true;
  }
  return false;
}

std::optional<std::vector<VecQ>> exceptional_leaves(const CrystGroup& g, const RatSubspace& w) {
  const Frame f = make_frame(g, w);
  const std::size_t n = g.dim();
  const SingularLocus locus = singular_leaf_locus(g, w);
  const Sublattice l1 = sublattice_from_generators(n, f.cols);
  std::vector<VecQ> reps;
  for (const auto& st : locus.strata) {
    if (!(st.direction == w)) return std::nullopt;
    std::vector<VecQ> gens = f.cols;
    for (const auto& b : st.offset_lattice.basis()) gens.push_back(mat_vec(f.p, b));
    const Sublattice l2 = sublattice_from_generators(n, gens);
    const std::size_t m = l2.rank();
    // Coset representatives of l2 / l1 through the Smith form of l1 in l2 coordinates.
    MatZ c(m, m);
    const auto b1 = l1.basis();
    for (std::size_t i = 0; i < m; ++i) {
      const auto coords = lattice_membership(b1[i], l2);
      if (!coords) throw Error(ErrorCode::kValidationFailed, "projected lattice not contained in offset lattice");
      for (std::size_t j = 0; j < m; ++j) c(i, j) = (*coords)[j];
    }
    const SmithForm sf = snf(c);
    const MatQ vinv = inverse(to_rational(sf.v));
    const auto b2 = l2.basis();
    const VecQ base = mat_vec(f.p, st.offset);
    std::vector<long> y(m, 0);
    while (true) {
      VecQ yq(m);
      for (std::size_t j = 0; j < m; ++j) yq[j] = y[j];
      VecQ coeffs(m);
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) coeffs[j] += yq[k] * vinv(k, j);
      VecQ point = base;
      for (std::size_t j = 0; j < m; ++j) point = add(point, scale(b2[j], coeffs[j]));
      bool fresh = true;
      for (const auto& r : reps)
        if (same_leaf(g, w, r, point)) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(point);
      std::size_t k = 0;
      while (k < m && y[k] + 1 >= sf.s(k, k).get_si()) y[k++] = 0;
      if (k == m) break;
      ++y[k];
    }
  }
  return reps;
}

std::pair<RatSubspace, RatSubspace> transverse_pair(const CrystGroup& g) {
  if (g.dim() < 2) throw Error(ErrorCode::kInvalidArgument, "transverse pair needs dimension at least 2");
  const auto comps = isotypic_decomposition(g);
  RatSubspace w1;
  if (comps.size() >= 2) {
    w1 = comps.front().space;
  } else {
    const IsotypicComponent split = split_isotypic(g, comps.front());
    if (!split.certified || *split.multiplicity < 2)
      throw Error(ErrorCode::kNoProperInvariantSubspaceFound, "holonomy representation has no proper invariant subspace");
    w1 = split.irreducibles.front();
  }
  return {w1, invariant_complement(g, w1)};
}

}  // namespace flatcollapse
