#pragma once

// Rational holonomy representation: conjugacy classes, isotypic components,
// splitting into irreducibles and i-sequences.

#include <optional>
#include <vector>

#include "flatcollapse/crystal_group.hpp"

namespace flatcollapse {

inline constexpr int kDefaultProbeBudget = 5;

/// Conjugacy classes of the point group as lists of element indices; the
/// class of the identity comes first.
std::vector<std::vector<std::size_t>> conjugacy_classes(const CrystGroup& g);

/// Sum of the matrices in one class.
MatQ class_sum(const CrystGroup& g, const std::vector<std::size_t>& cls);

struct IsotypicComponent {
  RatSubspace space;
  std::optional<int> irreducible_dim;
  std::optional<int> multiplicity;
  bool certified = false;
  /// Irreducible invariant subspaces whose direct sum is space (filled by
  /// split_isotypic when certified).
  std::vector<RatSubspace> irreducibles;
};

/// Isotypic components of the rational representation, ordered by dimension
/// and then by descending canonical basis.
std::vector<IsotypicComponent> isotypic_decomposition(const CrystGroup& g);

/// Basis of the commutant {X : X A = A X for all A} restricted to an
/// invariant subspace, written in the coordinates of its canonical basis.
std::vector<MatQ> commutant_basis(const CrystGroup& g, const RatSubspace& space);

/// Matrix of the linear map a restricted to an invariant subspace, in the
/// coordinates of its canonical basis (column convention).
MatQ restrict_to(const MatQ& a, const RatSubspace& space);

/// Fills irreducible_dim and multiplicity. Certification is exact: a piece
/// is declared irreducible only when the dimension of its commutant is
/// square-free. Pieces are split by commutant elements with reducible
/// minimal polynomial, or by cyclic submodules generated by lattice points of
/// height at most budget. Anything else is left undetermined.
IsotypicComponent split_isotypic(const CrystGroup& g, const IsotypicComponent& comp, int budget = kDefaultProbeBudget);

enum class SequenceStatus { kCertified, kBudgetLimited };

struct ISequence {
  std::vector<int> entries;                 // determined part, non-decreasing
  std::vector<int> unresolved_block_dims;   // dimensions of undetermined components
  SequenceStatus status = SequenceStatus::kCertified;
  std::vector<IsotypicComponent> components;
};

ISequence i_sequence(const CrystGroup& g, int budget = kDefaultProbeBudget);

struct TheoremCWitness {
  bool applicable = false;
  RatSubspace w1, w2;
  std::vector<int> predicted1, predicted2;
  std::vector<int> computed1, computed2;
};

/// Selection of b_j irreducible pieces from each isotypic component.
struct Selection {
  std::vector<int> counts;
  RatSubspace space;
  std::vector<int> predicted;  // i-sequence with the selected pieces removed
};

/// All selections, ordered by dimension of the selected subspace and then
/// lexicographically descending in the counts. Requires certified components.
std::vector<Selection> isotypic_selections(const CrystGroup& g, const ISequence& seq);

/// Two nontrivial collapses with different predicted i-sequences, verified by
/// collapsing. Throws BudgetLimited if the i-sequence is not certified.
TheoremCWitness theorem_c_witnesses(const CrystGroup& g, int budget = kDefaultProbeBudget);

}  // namespace flatcollapse
