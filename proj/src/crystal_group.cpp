#include "flatcollapse/crystal_group.hpp"

#include <deque>

#include "flatcollapse/normal_form.hpp"

namespace flatcollapse {

namespace {

bool is_gram_orthogonal(const MatQ& a, const GramForm& g) {
  return a.transpose() * g.matrix() * a == g.matrix();
}

MatQ minus_identity(const MatQ& a) {
  MatQ m = a;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1;
  return m;
}

}  // namespace

CrystGroup CrystGroup::from_generators(const GramForm& gram, const std::vector<Generator>& generators,
                                       std::size_t bound) {
  const std::size_t n = gram.dim();
  CrystGroup g;
  g.gram_ = gram;
  g.generators_ = generators;
  for (const auto& gen : generators) {
    if (gen.matrix.rows() != n || gen.matrix.cols() != n || gen.translation.size() != n)
      throw Error(ErrorCode::kInvalidArgument, "generator shape does not match dimension " + std::to_string(n));
    const Int det = determinant(gen.matrix);
    if (det != 1 && det != -1) throw Error(ErrorCode::kNotGramOrthogonal, "generator matrix is not unimodular");
    if (!is_gram_orthogonal(to_rational(gen.matrix), gram))
      throw Error(ErrorCode::kNotGramOrthogonal, "generator matrix does not preserve the Gram form");
  }

  auto insert = [&](const MatZ& a, const VecQ& v) {
    g.index_.emplace(a, g.elements_.size());
    g.elements_.push_back(a);
    g.elements_q_.push_back(to_rational(a));
    g.translations_.push_back(reduce_mod_one(v));
  };
  insert(MatZ::identity(n), zero_vector(n));

  // Breadth-first closure. Every edge (element * generator) is checked
  // against the stored translation class, which proves the cocycle identity
  // on all products.
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      const MatZ a = g.elements_[i] * gen.matrix;
      const VecQ v = add(mat_vec(g.elements_q_[i], gen.translation), g.translations_[i]);
      const auto it = g.index_.find(a);
      if (it == g.index_.end()) {
        if (g.elements_.size() >= bound)
          throw Error(ErrorCode::kPointGroupBoundExceeded,
                      "point group exceeds the bound " + std::to_string(bound));
        insert(a, v);
        queue.push_back(g.elements_.size() - 1);
      } else if (!is_integral(sub(v, g.translations_[it->second]))) {
        throw Error(ErrorCode::kCocycleViolation, "generator translations are inconsistent with the lattice Z^n");
      }
    }
  }
  return g;
}

std::optional<std::size_t> CrystGroup::index_of(const MatZ& a) const {
  const auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CrystGroup::require_index(const MatZ& a) const {
  const auto i = index_of(a);
  if (!i) throw Error(ErrorCode::kElementNotInPointGroup, "matrix is not in the point group");
  return *i;
}

std::size_t CrystGroup::multiply(std::size_t i, std::size_t j) const { return require_index(elements_[i] * elements_[j]); }

std::size_t CrystGroup::inverse(std::size_t i) const {
  std::size_t k = i;
  std::size_t prev = 0;
  while (k != 0) {
    prev = k;
    k = multiply(k, i);
  }
  return i == 0 ? 0 : prev;
}

int CrystGroup::element_order(std::size_t i) const {
  int k = 1;
  std::size_t p = i;
  while (p != 0) {
    p = multiply(p, i);
    ++k;
  }
  return k;
}

CrystGroup change_basis(const CrystGroup& g, const MatZ& u) {
  if (!is_unimodular(u)) throw Error(ErrorCode::kInvalidArgument, "basis change must be unimodular");
  const MatQ uq = to_rational(u);
  const MatQ ui = flatcollapse::inverse(uq);
  const GramForm gram(ui.transpose() * g.gram().matrix() * ui);
  std::vector<Generator> gens;
  for (const auto& gen : g.generators()) {
    const auto a = to_integer(uq * to_rational(gen.matrix) * ui);
    gens.push_back({*a, mat_vec(uq, gen.translation)});
  }
  return CrystGroup::from_generators(gram, gens);
}

std::optional<VecQ> fixed_point(const MatQ& a, const VecQ& w) {
  // (A - Id) x = -w
  return solve(minus_identity(a), negate(w));
}

FixedData fixed_data(const CrystGroup& g, const MatZ& a) {
  const std::size_t i = g.require_index(a);
  const std::size_t n = g.dim();
  FixedData fd;
  fd.a = a;
  fd.order = g.element_order(i);
  const MatQ aq = g.element_q(i);
  MatQ sum(n, n);
  MatQ power = MatQ::identity(n);
  for (int j = 0; j < fd.order; ++j) {
    sum = sum + power;
    power = power * aq;
  }
  fd.projector = scaled(sum, make_rat(1, fd.order));
  const MatQ m = minus_identity(aq);
  const MatQ ker = nullspace(m);
  fd.kernel = ker.rows() == 0 ? RatSubspace(n) : RatSubspace::from_rows(ker);
  fd.image = rank(m) == 0 ? RatSubspace(n) : RatSubspace::from_rows(m.transpose());
  return fd;
}

TorsionVerdict is_torsion_free(const CrystGroup& g) {
  const std::size_t n = g.dim();
  TorsionVerdict verdict;
  for (std::size_t i = 1; i < g.order(); ++i) {
    const FixedData fd = fixed_data(g, g.element(i));
    // (A, w) has a fixed point iff P w = 0, with P the projector onto ker(A - Id).
    std::vector<VecQ> gens;
    for (std::size_t j = 0; j < n; ++j) gens.push_back(fd.projector.col(j));
    const VecQ target = negate(mat_vec(fd.projector, g.translation(i)));
    const auto ell = integer_combination(gens, target);
    if (!ell) continue;
    const VecQ w = add(g.translation(i), to_rational(*ell));
    const auto x = fixed_point(g.element_q(i), w);
    if (!x) throw Error(ErrorCode::kValidationFailed, "projector test and fixed-point solve disagree");
    verdict.torsion_free = false;
    verdict.witness = TorsionWitness{i, *ell, *x};
    return verdict;
  }
  return verdict;
}

VecQ torus_action(const CrystGroup& g, const MatZ& a, const VecQ& x) {
  const std::size_t i = g.require_index(a);
  return reduce_mod_one(add(mat_vec(g.element_q(i), x), g.translation(i)));
}

bool is_group_invariant(const CrystGroup& g, const RatSubspace& w) {
  for (std::size_t i = 1; i < g.order(); ++i)
    if (!is_invariant(w, g.element_q(i))) return false;
  return true;
}

void require_invariant(const CrystGroup& g, const RatSubspace& w) {
  if (w.ambient() != g.dim()) throw Error(ErrorCode::kInvalidArgument, "subspace dimension does not match group");
  if (!is_group_invariant(g, w)) throw Error(ErrorCode::kNotInvariant, "subspace is not invariant under the point group");
}

RatSubspace invariant_complement(const CrystGroup& g, const RatSubspace& w) {
  require_invariant(g, w);
  const std::size_t n = g.dim();
  // Columns: basis of w followed by the non-pivot standard vectors.
  MatQ cols(n, n);
  std::vector<bool> pivot(n, false);
  std::size_t c = 0;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    const VecQ r = w.basis().row(i);
    for (std::size_t j = 0; j < n; ++j) cols(j, c) = r[j];
    for (std::size_t j = 0; j < n; ++j)
      if (!is_zero(r[j])) {
        pivot[j] = true;
        break;
      }
    ++c;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!pivot[j]) cols(j, c++) = 1;
  MatQ diag(n, n);
  for (std::size_t i = 0; i < w.dim(); ++i) diag(i, i) = 1;
  const MatQ q = cols * diag * flatcollapse::inverse(cols);
  MatQ avg(n, n);
  for (std::size_t i = 0; i < g.order(); ++i)
    avg = avg + g.element_q(i) * q * g.element_q(g.inverse(i));
  avg = scaled(avg, make_rat(1, static_cast<long>(g.order())));
  const MatQ ker = nullspace(avg);
  return ker.rows() == 0 ? RatSubspace(n) : RatSubspace::from_rows(ker);
}

}  // namespace flatcollapse
