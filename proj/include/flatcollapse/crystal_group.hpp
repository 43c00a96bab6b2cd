#pragma once

// Crystallographic groups in lattice coordinates: the translation lattice is
// Z^n, the point group consists of integral G-orthogonal matrices and each
// point-group element carries a translation class modulo Z^n.

#include <map>
#include <optional>
#include <vector>

#include "flatcollapse/lattice.hpp"

namespace flatcollapse {

inline constexpr std::size_t kDefaultPointGroupBound = 3840;

struct Generator {
  MatZ matrix;
  VecQ translation;
};

class CrystGroup {
 public:
  /// Closes the generator matrices to the point group, extends the vector
  /// system and checks every group invariant.
  static CrystGroup from_generators(const GramForm& gram, const std::vector<Generator>& generators,
                                    std::size_t bound = kDefaultPointGroupBound);

  std::size_t dim() const { return gram_.dim(); }
  const GramForm& gram() const { return gram_; }
  std::size_t order() const { return elements_.size(); }
  /// Element 0 is the identity.
  const std::vector<MatZ>& point_group() const { return elements_; }
  /// Translation class of each point-group element, reduced into [0,1)^n.
  const std::vector<VecQ>& vector_system() const { return translations_; }
  const std::vector<Generator>& generators() const { return generators_; }

  const MatZ& element(std::size_t i) const { return elements_[i]; }
  const MatQ& element_q(std::size_t i) const { return elements_q_[i]; }
  const VecQ& translation(std::size_t i) const { return translations_[i]; }
  std::optional<std::size_t> index_of(const MatZ& a) const;
  /// Throws ElementNotInPointGroup.
  std::size_t require_index(const MatZ& a) const;
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  /// Multiplicative order of element i.
  int element_order(std::size_t i) const;

 private:
  GramForm gram_;
  std::vector<Generator> generators_;
  std::vector<MatZ> elements_;
  std::vector<MatQ> elements_q_;
  std::vector<VecQ> translations_;
  std::map<MatZ, std::size_t> index_;
};

/// The same group in the lattice basis given by the rows of u^{-1}, i.e. with
/// new coordinates x' = u x. u must be unimodular.
CrystGroup change_basis(const CrystGroup& g, const MatZ& u);

struct TorsionWitness {
  std::size_t element = 0;  // index of A in the point group
  VecZ lattice_shift;       // l such that (A, v_A + l) has a fixed point
  VecQ fixed_point;
};

struct TorsionVerdict {
  bool torsion_free = true;
  std::optional<TorsionWitness> witness;
};

TorsionVerdict is_torsion_free(const CrystGroup& g);

/// A x + v_A reduced mod Z^n. Throws ElementNotInPointGroup.
VecQ torus_action(const CrystGroup& g, const MatZ& a, const VecQ& x);

struct FixedData {
  MatZ a;
  int order = 1;
  RatSubspace kernel;  // ker(A - Id)
  RatSubspace image;   // Im(A - Id)
  MatQ projector;      // G-orthogonal projector onto the kernel
};

FixedData fixed_data(const CrystGroup& g, const MatZ& a);

/// Some x with (A x + w) == x, if one exists.
std::optional<VecQ> fixed_point(const MatQ& a, const VecQ& w);

/// H-invariant rational complement of an H-invariant subspace, obtained by
/// averaging a coordinate projection onto w over the point group.
RatSubspace invariant_complement(const CrystGroup& g, const RatSubspace& w);

bool is_group_invariant(const CrystGroup& g, const RatSubspace& w);
/// Throws NotInvariant unless every point-group element preserves w.
void require_invariant(const CrystGroup& g, const RatSubspace& w);

}  // namespace flatcollapse
