#include "flatcollapse/representation.hpp"

#include <algorithm>
#include <set>

#include "flatcollapse/collapse.hpp"
#include "flatcollapse/polynomial.hpp"

namespace flatcollapse {

std::vector<std::vector<std::size_t>> conjugacy_classes(const CrystGroup& g) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> seen(g.order(), false);
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    std::set<std::size_t> cls;
    for (std::size_t b = 0; b < g.order(); ++b) cls.insert(g.multiply(g.multiply(b, i), g.inverse(b)));
    for (auto c : cls) seen[c] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

MatQ class_sum(const CrystGroup& g, const std::vector<std::size_t>& cls) {
  MatQ s(g.dim(), g.dim());
  for (auto i : cls) s = s + g.element_q(i);
  return s;
}

namespace {

std::vector<std::size_t> pivot_columns(const RatSubspace& space) {
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    std::size_t j = 0;
    while (is_zero(space.basis()(i, j))) ++j;
    piv.push_back(j);
  }
  return piv;
}

// Ambient vectors from coordinate rows in the canonical basis of space.
std::vector<VecQ> lift(const RatSubspace& space, const MatQ& coords) {
  std::vector<VecQ> out;
  if (coords.rows() == 0) return out;
  const MatQ amb = coords * space.basis();
  for (std::size_t i = 0; i < amb.rows(); ++i) out.push_back(amb.row(i));
  return out;
}

RatSubspace span_of(std::size_t n, const std::vector<VecQ>& vs) {
  if (vs.empty()) return RatSubspace(n);
  return RatSubspace::from_spanning(n, vs);
}

bool square_free(std::size_t e) {
  for (std::size_t p = 2; p * p <= e; ++p)
    if (e % (p * p) == 0) return false;
  return true;
}

// Generators of the point group as rational matrices.
std::vector<MatQ> point_group_generators(const CrystGroup& g) {
  std::vector<MatQ> gens;
  for (const auto& gen : g.generators()) gens.push_back(to_rational(gen.matrix));
  return gens;
}

// Splits space by the generalized eigenspaces of the irreducible factors of
// the characteristic polynomial of op restricted to it.
std::vector<RatSubspace> spectral_split(const MatQ& op, const RatSubspace& space) {
  const MatQ r = restrict_to(op, space);
  const Factorization fac = factor_over_q(characteristic_polynomial(r), kMaxFactorDegree);
  if (fac.factors.size() <= 1) return {space};
  std::vector<RatSubspace> parts;
  for (const auto& [f, e] : fac.factors) {
    const MatQ ker = nullspace(evaluate_at(pow(f, e), r));
    parts.push_back(span_of(space.ambient(), lift(space, ker)));
  }
  return parts;
}

std::vector<RatSubspace> cyclic_probe(const CrystGroup& g, const RatSubspace& space, int budget) {
  const std::size_t p = space.dim();
  const std::size_t n = space.ambient();
  constexpr std::size_t kMaxProbes = 4000;
  std::size_t probes = 0;
  for (int h = 1; h <= budget; ++h) {
    std::vector<long> c(p, -h);
    while (true) {
      long mx = 0;
      for (long x : c) mx = std::max(mx, std::labs(x));
      if (mx == h) {
        MatQ coords(1, p);
        for (std::size_t j = 0; j < p; ++j) coords(0, j) = c[j];
        const VecQ v = lift(space, coords)[0];
        std::vector<VecQ> orbit;
        for (std::size_t i = 0; i < g.order(); ++i) orbit.push_back(mat_vec(g.element_q(i), v));
        const RatSubspace cyc = span_of(n, orbit);
        if (cyc.dim() < p) {
          const RatSubspace comp = intersection(invariant_complement(g, cyc), space);
          return {cyc, comp};
        }
        if (++probes >= kMaxProbes) return {};
      }
      std::size_t k = 0;
      while (k < p && c[k] == h) c[k++] = -h;
      if (k == p) break;
      ++c[k];
    }
  }
  return {};
}

// Splits an invariant subspace into irreducibles; nullopt when the probe
// family cannot decide.
std::optional<std::vector<RatSubspace>> split_into_irreducibles(const CrystGroup& g, const RatSubspace& space,
                                                                int budget) {
  const std::vector<MatQ> comm = commutant_basis(g, space);
  if (square_free(comm.size())) return std::vector<RatSubspace>{space};

  std::vector<MatQ> candidates = comm;
  for (std::size_t i = 0; i < comm.size(); ++i)
    for (std::size_t j = i + 1; j < comm.size(); ++j)
      for (int c = 1; c <= std::max(budget, 1); ++c) candidates.push_back(comm[i] + scaled(comm[j], Rat(c)));

  std::vector<RatSubspace> parts;
  for (const auto& x : candidates) {
    const Factorization fac = factor_over_q(characteristic_polynomial(x), kMaxFactorDegree);
    if (fac.factors.size() >= 2) {
      for (const auto& [f, e] : fac.factors)
        parts.push_back(span_of(space.ambient(), lift(space, nullspace(evaluate_at(pow(f, e), x)))));
      break;
    }
    const MatQ y = evaluate_at(fac.factors[0].first, x);
    if (!is_zero_matrix(y) && rank(y) < y.rows()) {
      const RatSubspace ker = span_of(space.ambient(), lift(space, nullspace(y)));
      parts = {ker, intersection(invariant_complement(g, ker), space)};
      break;
    }
  }
  if (parts.empty()) parts = cyclic_probe(g, space, budget);
  if (parts.empty()) return std::nullopt;

  std::vector<RatSubspace> out;
  for (const auto& p : parts) {
    auto sub = split_into_irreducibles(g, p, budget);
    if (!sub) return std::nullopt;
    out.insert(out.end(), sub->begin(), sub->end());
  }
  return out;
}

bool component_order(const RatSubspace& a, const RatSubspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return b.basis() < a.basis();
}

}  // namespace

MatQ restrict_to(const MatQ& a, const RatSubspace& space) {
  const auto piv = pivot_columns(space);
  const std::size_t r = space.dim();
  MatQ m(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    const VecQ image = mat_vec(a, space.basis().row(j));
    for (std::size_t i = 0; i < r; ++i) m(i, j) = image[piv[i]];
  }
  return m;
}

std::vector<MatQ> commutant_basis(const CrystGroup& g, const RatSubspace& space) {
  const std::size_t r = space.dim();
  std::vector<MatQ> restricted;
  for (const auto& a : point_group_generators(g)) restricted.push_back(restrict_to(a, space));
  // Unknown X flattened row-major; equations (X R - R X)_{ij} = 0.
  MatQ eqs(0, r * r);
  for (const auto& rm : restricted) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        VecQ row(r * r);
        for (std::size_t k = 0; k < r; ++k) {
          row[i * r + k] += rm(k, j);
          row[k * r + j] -= rm(i, k);
        }
        if (!is_zero_vector(row)) eqs.append_row(row);
      }
  }
  MatQ ns = eqs.rows() == 0 ? MatQ::identity(r * r) : nullspace(eqs);
  std::vector<MatQ> out;
  for (std::size_t t = 0; t < ns.rows(); ++t) {
    MatQ x(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) x(i, j) = ns(t, i * r + j);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<IsotypicComponent> isotypic_decomposition(const CrystGroup& g) {
  const std::size_t n = g.dim();
  if (static_cast<int>(n) > kMaxFactorDegree)
    throw Error(ErrorCode::kDegreeCapExceeded, "dimension exceeds the factorization degree cap");
  const auto classes = conjugacy_classes(g);
  std::vector<MatQ> sums;
  for (const auto& cls : classes) sums.push_back(class_sum(g, cls));

  // Class sums plus a few fixed integer combinations, so that conjugate
  // spectra on different components are separated.
  std::vector<MatQ> ops(sums.begin() + 1, sums.end());
  for (int variant = 0; variant < 3 && sums.size() > 2; ++variant) {
    MatQ comb(n, n);
    for (std::size_t k = 1; k < sums.size(); ++k) {
      const long kk = static_cast<long>(k);
      const long c = variant == 0 ? kk : variant == 1 ? kk * kk : 1 + 2 * kk * (k % 2 == 0 ? 1 : -1);
      comb = comb + scaled(sums[k], Rat(c));
    }
    ops.push_back(std::move(comb));
  }

  std::vector<RatSubspace> parts{RatSubspace::whole(n)};
  if (n == 0) parts.clear();
  for (const auto& op : ops) {
    std::vector<RatSubspace> next;
    for (const auto& p : parts)
      for (auto& q : spectral_split(op, p)) next.push_back(std::move(q));
    parts = std::move(next);
  }
  std::sort(parts.begin(), parts.end(), component_order);

  std::vector<IsotypicComponent> out;
  for (auto& p : parts) {
    if (!is_group_invariant(g, p)) throw Error(ErrorCode::kValidationFailed, "isotypic component is not invariant");
    IsotypicComponent c;
    c.space = std::move(p);
    out.push_back(std::move(c));
  }
  return out;
}

IsotypicComponent split_isotypic(const CrystGroup& g, const IsotypicComponent& comp, int budget) {
  IsotypicComponent out = comp;
  out.irreducible_dim.reset();
  out.multiplicity.reset();
  out.certified = false;
  out.irreducibles.clear();
  auto pieces = split_into_irreducibles(g, comp.space, budget);
  if (!pieces) return out;
  std::sort(pieces->begin(), pieces->end(), component_order);
  const std::size_t d = pieces->front().dim();
  for (const auto& p : *pieces)
    if (p.dim() != d) throw Error(ErrorCode::kValidationFailed, "irreducible pieces of one component differ in dimension");
  out.irreducible_dim = static_cast<int>(d);
  out.multiplicity = static_cast<int>(pieces->size());
  out.certified = true;
  out.irreducibles = std::move(*pieces);
  return out;
}

ISequence i_sequence(const CrystGroup& g, int budget) {
  ISequence seq;
  for (const auto& c : isotypic_decomposition(g)) {
    IsotypicComponent filled = split_isotypic(g, c, budget);
    if (filled.certified) {
      for (int i = 0; i < *filled.multiplicity; ++i) seq.entries.push_back(*filled.irreducible_dim);
    } else {
      seq.unresolved_block_dims.push_back(static_cast<int>(filled.space.dim()));
      seq.status = SequenceStatus::kBudgetLimited;
    }
    seq.components.push_back(std::move(filled));
  }
  std::sort(seq.entries.begin(), seq.entries.end());
  return seq;
}

std::vector<Selection> isotypic_selections(const CrystGroup& g, const ISequence& seq) {
  if (seq.status != SequenceStatus::kCertified)
    throw Error(ErrorCode::kBudgetLimited, "selections need a certified i-sequence");
  const std::size_t k = seq.components.size();
  std::vector<Selection> out;
  std::vector<int> counts(k, 0);
  while (true) {
    Selection s;
    s.counts = counts;
    std::vector<VecQ> vs;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& comp = seq.components[j];
      for (int b = 0; b < counts[j]; ++b)
        for (auto& v : comp.irreducibles[static_cast<std::size_t>(b)].vectors()) vs.push_back(std::move(v));
      for (int b = counts[j]; b < *comp.multiplicity; ++b) s.predicted.push_back(*comp.irreducible_dim);
    }
    s.space = span_of(g.dim(), vs);
    std::sort(s.predicted.begin(), s.predicted.end());
    out.push_back(std::move(s));
    std::size_t j = 0;
    while (j < k && counts[j] == *seq.components[j].multiplicity) counts[j++] = 0;
    if (j == k) break;
    ++counts[j];
  }
  std::stable_sort(out.begin(), out.end(), [](const Selection& a, const Selection& b) {
    if (a.space.dim() != b.space.dim()) return a.space.dim() < b.space.dim();
    return a.counts > b.counts;
  });
  return out;
}

TheoremCWitness theorem_c_witnesses(const CrystGroup& g, int budget) {
  const ISequence seq = i_sequence(g, budget);
  if (seq.status != SequenceStatus::kCertified)
    throw Error(ErrorCode::kBudgetLimited, "i-sequence not certified within the probe budget");
  TheoremCWitness out;
  const auto& e = seq.entries;
  if (e.size() == 2 && e[0] == e[1]) return out;

  const auto selections = isotypic_selections(g, seq);
  const Selection* first = nullptr;
  const Selection* second = nullptr;
  for (const auto& s : selections) {
    if (s.space.dim() == 0 || s.space.dim() == g.dim()) continue;
    if (!first) {
      first = &s;
    } else if (s.predicted != first->predicted) {
      second = &s;
      break;
    }
  }
  if (!first || !second) return out;

  out.applicable = true;
  out.w1 = first->space;
  out.w2 = second->space;
  out.predicted1 = first->predicted;
  out.predicted2 = second->predicted;
  out.computed1 = i_sequence(collapse(g, out.w1).group, budget).entries;
  out.computed2 = i_sequence(collapse(g, out.w2).group, budget).entries;
  if (out.computed1 != out.predicted1 || out.computed2 != out.predicted2)
    throw Error(ErrorCode::kValidationFailed, "collapsed i-sequence differs from the predicted subsequence");
  return out;
}

}  // namespace flatcollapse
