#include "flatcollapse/lattice.hpp"

#include "flatcollapse/normal_form.hpp"

namespace flatcollapse {

GramForm::GramForm(MatQ g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols()) throw Error(ErrorCode::kInvalidArgument, "Gram matrix must be square");
  const std::size_t n = g_.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (g_(i, j) != g_(j, i)) throw Error(ErrorCode::kInvalidArgument, "Gram matrix must be symmetric");
  for (std::size_t k = 1; k <= n; ++k) {
    MatQ minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = g_(i, j);
    if (sgn(determinant(minor)) <= 0)
      throw Error(ErrorCode::kInvalidArgument, "Gram matrix must be positive definite");
  }
}

GramForm GramForm::identity(std::size_t n) { return GramForm(MatQ::identity(n)); }

Rat GramForm::inner(const VecQ& a, const VecQ& b) const {
  Rat s = 0;
  const std::size_t n = g_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < n; ++j) s += a[i] * g_(i, j) * b[j];
  }
  return s;
}

// ---------------------------------------------------------------------------

RatSubspace RatSubspace::from_rows(const MatQ& rows) {
  RatSubspace w(rows.cols());
  w.basis_ = row_space_basis(rows);
  return w;
}

RatSubspace RatSubspace::from_spanning(std::size_t ambient, const std::vector<VecQ>& vectors) {
  MatQ m(0, ambient);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw Error(ErrorCode::kInvalidArgument, "vector length differs from ambient dimension");
    m.append_row(v);
  }
  return from_rows(m);
}

RatSubspace RatSubspace::whole(std::size_t ambient) { return from_rows(MatQ::identity(ambient)); }

std::vector<VecQ> RatSubspace::vectors() const {
  std::vector<VecQ> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
  return out;
}

bool RatSubspace::contains(const VecQ& v) const {
  MatQ m = basis_;
  m.append_row(v);
  return rank(m) == dim();
}

bool RatSubspace::contains(const RatSubspace& other) const {
  MatQ m = basis_;
  for (std::size_t i = 0; i < other.dim(); ++i) m.append_row(other.basis_.row(i));
  return rank(m) == dim();
}

MatQ RatSubspace::annihilator() const {
  if (dim() == 0) return MatQ::identity(ambient_);
  return nullspace(basis_);
}

RatSubspace sum(const RatSubspace& a, const RatSubspace& b) {
  MatQ m = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) m.append_row(b.basis().row(i));
  if (m.rows() == 0) return RatSubspace(a.ambient());
  return RatSubspace::from_rows(m);
}

RatSubspace intersection(const RatSubspace& a, const RatSubspace& b) {
  MatQ ann = a.annihilator();
  const MatQ bn = b.annihilator();
  for (std::size_t i = 0; i < bn.rows(); ++i) ann.append_row(bn.row(i));
  if (ann.rows() == 0) return RatSubspace::whole(a.ambient());
  const MatQ ns = nullspace(ann);
  if (ns.rows() == 0) return RatSubspace(a.ambient());
  return RatSubspace::from_rows(ns);
}

RatSubspace orthogonal_complement(const RatSubspace& w, const GramForm& g) {
  if (w.dim() == 0) return RatSubspace::whole(w.ambient());
  const MatQ ns = nullspace(w.basis() * g.matrix());
  if (ns.rows() == 0) return RatSubspace(w.ambient());
  return RatSubspace::from_rows(ns);
}

MatQ projector(const RatSubspace& w, const GramForm& g) {
  const std::size_t n = w.ambient();
  if (w.dim() == 0) return MatQ(n, n);
  const MatQ& b = w.basis();
  const MatQ bg = b * g.matrix();
  return b.transpose() * inverse(bg * b.transpose()) * bg;
}

RatSubspace image(const MatQ& a, const RatSubspace& w) {
  if (w.dim() == 0) return RatSubspace(w.ambient());
  return RatSubspace::from_rows(w.basis() * a.transpose());
}

RatSubspace preimage(const MatQ& a, const RatSubspace& w) {
  const MatQ ann = w.annihilator();
  if (ann.rows() == 0) return RatSubspace::whole(w.ambient());
  const MatQ ns = nullspace(ann * a);
  if (ns.rows() == 0) return RatSubspace(w.ambient());
  return RatSubspace::from_rows(ns);
}

bool is_invariant(const RatSubspace& w, const MatQ& a) {
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!w.contains(mat_vec(a, w.basis().row(i)))) return false;
  return true;
}

// ---------------------------------------------------------------------------

AlgSubspace AlgSubspace::from_spanning(FieldPtr field, std::size_t ambient, const std::vector<VecNF>& vectors) {
  AlgSubspace w;
  w.field_ = std::move(field);
  w.ambient_ = ambient;
  MatNF m(0, ambient);
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw Error(ErrorCode::kInvalidArgument, "vector length differs from ambient dimension");
    VecNF row;
    for (const auto& x : v) {
      if (x.field() && x.field() != w.field_ && !x.field()->same_as(*w.field_))
        throw Error(ErrorCode::kFieldMismatch, "basis entry belongs to a different number field");
      row.push_back(NFElem(w.field_, x.coefficients()));
    }
    m.append_row(row);
  }
  if (m.rows() == 0) {
    w.basis_ = MatNF(0, ambient);
  } else {
    w.basis_ = row_space_basis(m);
  }
  // Attach the field to every entry so equality is purely syntactic.
  for (std::size_t i = 0; i < w.basis_.rows(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) w.basis_(i, j) = NFElem(w.field_, w.basis_(i, j).coefficients());
  return w;
}

AlgSubspace AlgSubspace::from_rational(FieldPtr field, const RatSubspace& w) {
  std::vector<VecNF> vecs;
  for (const auto& v : w.vectors()) {
    VecNF row;
    for (const auto& x : v) row.push_back(NFElem::rational(field, x));
    vecs.push_back(std::move(row));
  }
  return from_spanning(std::move(field), w.ambient(), vecs);
}

std::vector<VecNF> AlgSubspace::vectors() const {
  std::vector<VecNF> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
  return out;
}

bool AlgSubspace::contains(const VecNF& v) const {
  MatNF m = basis_;
  m.append_row(v);
  return rref_in_place(m).size() == dim();
}

bool AlgSubspace::contains(const AlgSubspace& other) const {
  MatNF m = basis_;
  for (std::size_t i = 0; i < other.dim(); ++i) m.append_row(other.basis_.row(i));
  return rref_in_place(m).size() == dim();
}

std::optional<RatSubspace> AlgSubspace::as_rational() const {
  MatQ m(basis_.rows(), ambient_);
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (!basis_(i, j).is_rational()) return std::nullopt;
      m(i, j) = basis_(i, j).coeff(0);
    }
  RatSubspace w(ambient_);
  if (m.rows() > 0) w = RatSubspace::from_rows(m);
  return w;
}

bool AlgSubspace::is_invariant(const MatQ& a) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    VecNF image_row(ambient_);
    for (std::size_t r = 0; r < ambient_; ++r) {
      NFElem s(field_, {});
      for (std::size_t c = 0; c < ambient_; ++c)
        if (!is_zero(a(r, c))) s += NFElem::rational(field_, a(r, c)) * basis_(i, c);
      image_row[r] = s;
    }
    if (!contains(image_row)) return false;
  }
  return true;
}

bool AlgSubspace::operator==(const AlgSubspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

// ---------------------------------------------------------------------------

std::vector<VecQ> Sublattice::basis() const {
  std::vector<VecQ> out;
  for (std::size_t i = 0; i < numerators.rows(); ++i) {
    VecQ v(ambient);
    for (std::size_t j = 0; j < ambient; ++j) v[j] = make_rat(numerators(i, j), denominator);
    out.push_back(std::move(v));
  }
  return out;
}

Rat Sublattice::covolume_sq(const GramForm& g) const {
  const auto b = basis();
  MatQ gram(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) gram(i, j) = g.inner(b[i], b[j]);
  return determinant(gram);
}

RatSubspace Sublattice::span() const { return RatSubspace::from_spanning(ambient, basis()); }

Sublattice sublattice_from_generators(std::size_t ambient, const std::vector<VecQ>& gens) {
  Int den = 1;
  for (const auto& v : gens) {
    if (v.size() != ambient) throw Error(ErrorCode::kInvalidArgument, "generator length differs from ambient dimension");
    const Int l = lcm_of_denominators(v);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
  }
  Sublattice out;
  out.ambient = ambient;
  if (gens.empty()) {
    out.numerators = MatZ(0, ambient);
    return out;
  }
  MatZ m(gens.size(), ambient);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = Rat(gens[i][j] * den).get_num();
  const HermiteForm hf = hnf(m);
  MatZ rows = hf.h.top_rows(hf.rank);
  Int g = den;
  for (const auto& x : rows.data()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) rows(i, j) /= g;
  out.numerators = std::move(rows);
  out.denominator = den / g;
  return out;
}

Sublattice standard_lattice(std::size_t n) {
  Sublattice l;
  l.ambient = n;
  l.numerators = MatZ::identity(n);
  return l;
}

std::optional<VecZ> lattice_membership(const VecQ& t, const Sublattice& lattice) {
  if (t.size() != lattice.ambient) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in lattice membership");
  if (lattice.rank() == 0) {
    if (is_zero_vector(t)) return VecZ{};
    return std::nullopt;
  }
  // Solve c * B = t with B the basis rows, i.e. B^T c = t.
  const MatQ bt = to_rational(lattice.numerators).transpose();
  const auto sol = solve(bt, scale(t, Rat(lattice.denominator)));
  if (!sol) return std::nullopt;
  VecZ c;
  for (const auto& x : *sol) {
    if (!is_integer(x)) return std::nullopt;
    c.push_back(x.get_num());
  }
  return c;
}

bool contains(const Sublattice& outer, const Sublattice& inner) {
  for (const auto& v : inner.basis())
    if (!lattice_membership(v, outer)) return false;
  return true;
}

Int lattice_index(const Sublattice& outer, const Sublattice& inner) {
  if (outer.rank() != inner.rank())
    throw Error(ErrorCode::kInvalidArgument, "lattice index requires equal ranks");
  MatZ coords(inner.rank(), inner.rank());
  const auto b = inner.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto c = lattice_membership(b[i], outer);
    if (!c) throw Error(ErrorCode::kInvalidArgument, "lattice index requires containment");
    for (std::size_t j = 0; j < c->size(); ++j) coords(i, j) = (*c)[j];
  }
  return abs(determinant(coords));
}

namespace {

// Integer rows spanning the same rational space as w (denominators cleared).
MatZ integral_rows(const RatSubspace& w) {
  MatZ m(w.dim(), w.ambient());
  for (std::size_t i = 0; i < w.dim(); ++i) {
    const VecQ r = w.basis().row(i);
    const Int l = lcm_of_denominators(r);
    for (std::size_t j = 0; j < w.ambient(); ++j) m(i, j) = Rat(r[j] * l).get_num();
  }
  return m;
}

}  // namespace

AdaptedBasis adapted_zbasis(const RatSubspace& w) {
  const std::size_t n = w.ambient();
  const std::size_t k = w.dim();
  AdaptedBasis out;
  out.k = k;
  if (k == 0) {
    out.basis = MatZ::identity(n);
    return out;
  }
  // S = U B V with B of full row rank: the first k rows of V^{-1} span Z^n cap W.
  const SmithForm sf = snf(integral_rows(w));
  const auto vinv = to_integer(inverse(to_rational(sf.v)));
  if (!vinv) throw Error(ErrorCode::kValidationFailed, "Smith transform not unimodular");
  MatZ head = hnf(vinv->top_rows(k)).h.top_rows(k);
  MatZ basis = *vinv;
  for (std::size_t i = 0; i < k; ++i) basis.set_row(i, head.row(i));
  out.basis = std::move(basis);
  return out;
}

SubspaceLattice subspace_lattice(const RatSubspace& w) {
  SubspaceLattice out;
  const AdaptedBasis ab = adapted_zbasis(w);
  std::vector<VecQ> gens;
  for (std::size_t i = 0; i < ab.k; ++i) gens.push_back(to_rational(ab.basis.row(i)));
  out.lattice = sublattice_from_generators(w.ambient(), gens);
  out.l_generated = out.lattice.rank() == w.dim();
  return out;
}

ClosureResult l_closure(const AlgSubspace& w, const GramForm& g) {
  const std::size_t n = w.ambient();
  if (g.dim() != n) throw Error(ErrorCode::kInvalidArgument, "Gram form dimension mismatch");
  const FieldPtr& field = w.field();
  ClosureResult out;

  std::vector<VecQ> comps;
  for (const auto& v : w.vectors())
    for (auto& c : nf_components(v, field)) comps.push_back(std::move(c));
  out.closure = RatSubspace::from_spanning(n, comps);

  // Rational points of W: common zeros of every component of every
  // annihilating covector over the field.
  MatNF ann_nf = w.dim() == 0 ? MatNF(0, n) : nullspace(w.basis(), NFElem(field, {}), NFElem::rational(field, 1));
  if (w.dim() == 0) out.rational_part = RatSubspace(n);
  std::vector<VecQ> ann_rows;
  for (std::size_t i = 0; i < ann_nf.rows(); ++i)
    for (auto& c : nf_components(ann_nf.row(i), field)) ann_rows.push_back(std::move(c));
  if (w.dim() > 0) {
    if (ann_rows.empty()) {
      out.rational_part = RatSubspace::whole(n);
    } else {
      const MatQ ns = nullspace(MatQ::from_rows(ann_rows, n));
      out.rational_part = ns.rows() == 0 ? RatSubspace(n) : RatSubspace::from_rows(ns);
    }
  }

  // K: vectors of the closure G-orthogonal to W, over the field.
  const std::size_t m = out.closure.dim();
  if (m == 0 || w.dim() == 0) {
    out.k_part = AlgSubspace::from_rational(field, w.dim() == 0 ? out.closure : RatSubspace(n));
  } else {
    MatNF bhat(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) bhat(i, j) = NFElem::rational(field, out.closure.basis()(i, j));
    MatNF gq(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gq(i, j) = NFElem::rational(field, g.matrix()(i, j));
    const MatNF constraint = w.basis() * gq * bhat.transpose();
    const MatNF y = nullspace(constraint, NFElem(field, {}), NFElem::rational(field, 1));
    std::vector<VecNF> kvecs;
    if (y.rows() > 0) {
      const MatNF kb = y * bhat;
      for (std::size_t i = 0; i < kb.rows(); ++i) kvecs.push_back(kb.row(i));
    }
    out.k_part = AlgSubspace::from_spanning(field, n, kvecs);
  }

  out.w_lattice = subspace_lattice(out.closure).lattice;

  // Adapted Z-basis for the flag rational_part within closure within R^n:
  // change coordinates so the first r rows span the rational part, then
  // adapt the image of the closure in the remaining coordinates.
  const AdaptedBasis first = adapted_zbasis(out.rational_part);
  const std::size_t r = first.k;
  const MatQ u = to_rational(first.basis);
  const MatQ uinv = inverse(u);
  std::vector<VecQ> tails;
  for (const auto& v : out.closure.vectors()) {
    // Row vector x = y U, so y = x U^{-1}.
    VecQ y(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) y[j] += v[i] * uinv(i, j);
    tails.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(r), y.end());
  }
  const RatSubspace tail_space = RatSubspace::from_spanning(n - r, tails);
  const AdaptedBasis second = adapted_zbasis(tail_space);
  MatZ y_basis = MatZ::identity(n);
  for (std::size_t i = 0; i < n - r; ++i)
    for (std::size_t j = 0; j < n - r; ++j) {
      y_basis(r + i, j) = 0;
      y_basis(r + i, r + j) = second.basis(i, j);
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) y_basis(i, j) = (i == j) ? 1 : 0;
  const MatZ x_basis = y_basis * first.basis;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < r) out.w_vectors.push_back(x_basis.row(i));
    else if (i < r + second.k) out.v_vectors.push_back(x_basis.row(i));
    else out.u_vectors.push_back(x_basis.row(i));
  }
  return out;
}

Sublattice projected_lattice(const RatSubspace& s, const GramForm& g) {
  const std::size_t n = s.ambient();
  const MatQ p = projector(s, g);
  std::vector<VecQ> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(p.col(i));
  return sublattice_from_generators(n, gens);
}

}  // namespace flatcollapse
