#pragma once

// Subspaces of R^n relative to the standard lattice Z^n, sublattices of Q^n
// and the closure of an algebraic subspace in the rational subspaces.

#include <optional>
#include <vector>

#include "flatcollapse/number_field.hpp"
#include "flatcollapse/rational.hpp"

namespace flatcollapse {

/// Symmetric positive definite rational Gram matrix of the lattice basis.
class GramForm {
 public:
  GramForm() = default;
  explicit GramForm(MatQ g);
  static GramForm identity(std::size_t n);

  std::size_t dim() const { return g_.rows(); }
  const MatQ& matrix() const { return g_; }
  Rat inner(const VecQ& a, const VecQ& b) const;
  Rat norm_sq(const VecQ& a) const { return inner(a, a); }

 private:
  MatQ g_;
};

/// Rational subspace in canonical reduced row echelon form.
class RatSubspace {
 public:
  RatSubspace() = default;
  explicit RatSubspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static RatSubspace from_spanning(std::size_t ambient, const std::vector<VecQ>& vectors);
  static RatSubspace from_rows(const MatQ& rows);
  static RatSubspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  /// RREF rows.
  const MatQ& basis() const { return basis_; }
  std::vector<VecQ> vectors() const;
  bool contains(const VecQ& v) const;
  bool contains(const RatSubspace& other) const;
  /// Rows spanning the annihilator {phi : phi . w = 0 for w in this}.
  MatQ annihilator() const;

  bool operator==(const RatSubspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator<(const RatSubspace& o) const { return basis_ < o.basis_; }

 private:
  std::size_t ambient_ = 0;
  MatQ basis_;
};

RatSubspace sum(const RatSubspace& a, const RatSubspace& b);
RatSubspace intersection(const RatSubspace& a, const RatSubspace& b);
/// G-orthogonal complement.
RatSubspace orthogonal_complement(const RatSubspace& w, const GramForm& g);
/// G-orthogonal projector onto w acting on column vectors.
MatQ projector(const RatSubspace& w, const GramForm& g);
/// A(w) for the column action.
RatSubspace image(const MatQ& a, const RatSubspace& w);
/// {x : a x in w}.
RatSubspace preimage(const MatQ& a, const RatSubspace& w);
bool is_invariant(const RatSubspace& w, const MatQ& a);

/// Subspace over a real number field, canonical RREF over the field.
class AlgSubspace {
 public:
  AlgSubspace() = default;
  static AlgSubspace from_spanning(FieldPtr field, std::size_t ambient, const std::vector<VecNF>& vectors);
  static AlgSubspace from_rational(FieldPtr field, const RatSubspace& w);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const MatNF& basis() const { return basis_; }
  std::vector<VecNF> vectors() const;
  bool contains(const VecNF& v) const;
  bool contains(const AlgSubspace& other) const;
  /// Rational subspace with the same span, if the canonical basis is rational.
  std::optional<RatSubspace> as_rational() const;
  bool is_invariant(const MatQ& a) const;
  bool operator==(const AlgSubspace& o) const;

 private:
  FieldPtr field_;
  std::size_t ambient_ = 0;
  MatNF basis_;
};

/// Discrete subgroup of Q^n: rows of numerators / denominator, numerators in
/// row HNF with linearly independent rows and gcd(entries, denominator) = 1.
struct Sublattice {
  std::size_t ambient = 0;
  MatZ numerators;
  Int denominator = 1;

  std::size_t rank() const { return numerators.rows(); }
  std::vector<VecQ> basis() const;
  /// det(B G B^T) for the basis B.
  Rat covolume_sq(const GramForm& g) const;
  RatSubspace span() const;
  bool operator==(const Sublattice& o) const {
    return ambient == o.ambient && numerators == o.numerators && denominator == o.denominator;
  }
};

Sublattice sublattice_from_generators(std::size_t ambient, const std::vector<VecQ>& gens);
Sublattice standard_lattice(std::size_t n);
/// Integer coordinates of t in the lattice basis, if t belongs to it.
std::optional<VecZ> lattice_membership(const VecQ& t, const Sublattice& lattice);
bool contains(const Sublattice& outer, const Sublattice& inner);
/// [outer : inner] for equal-rank lattices with inner contained in outer.
Int lattice_index(const Sublattice& outer, const Sublattice& inner);

struct SubspaceLattice {
  Sublattice lattice;  // Z^n intersected with the subspace
  bool l_generated = true;
};
SubspaceLattice subspace_lattice(const RatSubspace& w);

struct AdaptedBasis {
  MatZ basis;         // rows form a Z-basis of Z^n
  std::size_t k = 0;  // the first k rows are a Z-basis of Z^n intersected with W
};
AdaptedBasis adapted_zbasis(const RatSubspace& w);

struct ClosureResult {
  RatSubspace closure;      // smallest rational subspace containing W
  AlgSubspace k_part;       // G-orthogonal complement of W inside the closure
  RatSubspace rational_part;  // W intersected with Q^n
  Sublattice w_lattice;     // Z^n intersected with the closure
  std::vector<VecZ> w_vectors;  // Z-basis of Z^n intersected with the rational part
  std::vector<VecZ> v_vectors;  // completes w_vectors to a Z-basis of w_lattice
  std::vector<VecZ> u_vectors;  // completes everything to a Z-basis of Z^n
};
ClosureResult l_closure(const AlgSubspace& w, const GramForm& g);

/// P_S(Z^n) for the G-orthogonal projection onto S.
Sublattice projected_lattice(const RatSubspace& s, const GramForm& g);

}  // namespace flatcollapse
