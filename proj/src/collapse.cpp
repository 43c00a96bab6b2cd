#include "flatcollapse/collapse.hpp"

#include "flatcollapse/normal_form.hpp"

namespace flatcollapse {

bool acts_trivially_on(const MatQ& a, const RatSubspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const VecQ b = s.basis().row(i);
    if (mat_vec(a, b) != b) return false;
  }
  return true;
}

VecQ chart_coordinates(const CollapsedGroup& cg, const VecQ& x) {
  if (cg.chart.rows() == 0) return {};
  const auto c = solve(cg.chart.transpose(), x);
  if (!c) throw Error(ErrorCode::kInvalidArgument, "point does not lie in the orthogonal complement");
  return *c;
}

CollapsedGroup collapse(const CrystGroup& g, const RatSubspace& w) {
  require_invariant(g, w);
  const std::size_t n = g.dim();
  CollapsedGroup cg;
  cg.w = w;
  cg.w_perp = orthogonal_complement(w, g.gram());
  const std::size_t m = cg.w_perp.dim();
  const MatQ p = projector(cg.w_perp, g.gram());

  std::vector<VecQ> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(p.col(i));
  cg.projected = sublattice_from_generators(n, gens);
  for (std::size_t i = 0; i < g.order(); ++i)
    if (acts_trivially_on(g.element_q(i), cg.w_perp)) {
      cg.kernel_elements.push_back(i);
      gens.push_back(mat_vec(p, g.translation(i)));
    }
  cg.lattice = sublattice_from_generators(n, gens);
  if (cg.lattice.rank() != m) throw Error(ErrorCode::kValidationFailed, "collapsed lattice has wrong rank");
  cg.chart = MatQ::from_rows(cg.lattice.basis(), n);
  if (m == 0) cg.chart = MatQ(0, n);

  // Restricted matrices M with A C^T = C^T M and projected translations.
  auto restricted = [&](std::size_t idx) {
    MatZ mz(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      const VecQ image = mat_vec(g.element_q(idx), cg.chart.row(j));
      const VecQ c = chart_coordinates(cg, image);
      for (std::size_t i = 0; i < m; ++i) {
        if (!is_integer(c[i])) throw Error(ErrorCode::kValidationFailed, "restriction does not preserve the collapsed lattice");
        mz(i, j) = c[i].get_num();
      }
    }
    return mz;
  };
  auto projected_translation = [&](std::size_t idx) {
    return reduce_mod_one(chart_coordinates(cg, mat_vec(p, g.translation(idx))));
  };

  const GramForm gram(m == 0 ? MatQ(0, 0) : cg.chart * g.gram().matrix() * cg.chart.transpose());
  std::vector<Generator> cgens;
  for (const auto& gen : g.generators()) {
    const std::size_t idx = g.require_index(gen.matrix);
    if (m > 0) cgens.push_back({restricted(idx), projected_translation(idx)});
  }
  cg.group = CrystGroup::from_generators(gram, cgens);

  // Every parent element must map into the collapsed group with a
  // consistent translation class.
  for (std::size_t i = 0; i < g.order(); ++i) {
    const std::size_t j = m == 0 ? 0 : cg.group.require_index(restricted(i));
    if (m > 0 && !is_integral(sub(projected_translation(i), cg.group.translation(j))))
      throw Error(ErrorCode::kValidationFailed, "collapsed vector system is inconsistent");
    cg.restriction_of.push_back(j);
  }
  if (g.order() % cg.group.order() != 0)
    throw Error(ErrorCode::kValidationFailed, "collapsed holonomy order does not divide the parent order");
  return cg;
}

CollapsedGroup collapse(const CrystGroup& g, const AlgSubspace& w) {
  for (std::size_t i = 1; i < g.order(); ++i)
    if (!w.is_invariant(g.element_q(i)))
      throw Error(ErrorCode::kNotInvariant, "subspace is not invariant under the point group");
  return collapse(g, l_closure(w, g.gram()).closure);
}

CollapsedInvariants collapsed_invariants(const CollapsedGroup& cg) {
  CollapsedInvariants inv;
  inv.holonomy_order = cg.group.order();
  inv.lattice_index = cg.lattice.rank() == 0 ? Int(1) : lattice_index(cg.lattice, cg.projected);
  return inv;
}

SmoothnessVerdict is_smooth(const CrystGroup& g, const RatSubspace& w) {
  require_invariant(g, w);
  if (!is_torsion_free(g).torsion_free)
    throw Error(ErrorCode::kNotBieberbach, "smoothness test requires a torsion-free group");
  const std::size_t n = g.dim();
  const RatSubspace w_perp = orthogonal_complement(w, g.gram());
  const MatQ p = projector(w_perp, g.gram());
  SmoothnessVerdict verdict;
  for (std::size_t i = 1; i < g.order(); ++i) {
    if (acts_trivially_on(g.element_q(i), w_perp)) continue;
    // Singular iff P_ker P (v_A + l) = 0 for some integral l.
    const FixedData fd = fixed_data(g, g.element(i));
    const MatQ m = fd.projector * p;
    std::vector<VecQ> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(m.col(j));
    const auto ell = integer_combination(gens, negate(mat_vec(m, g.translation(i))));
    if (!ell) continue;
    const VecQ pv = mat_vec(p, add(g.translation(i), to_rational(*ell)));
    // The collapsed element (A, P v) fixes x in W-perp with (A - Id) x = -P v.
    auto x = fixed_point(g.element_q(i), pv);
    if (!x) throw Error(ErrorCode::kValidationFailed, "membership test and fixed-point solve disagree");
    *x = mat_vec(p, *x);
    verdict.smooth = false;
    verdict.witness = SmoothnessWitness{i, *ell, *x};
    return verdict;
  }
  return verdict;
}

}  // namespace flatcollapse
