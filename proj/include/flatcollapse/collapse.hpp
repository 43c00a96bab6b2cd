#pragma once

// The collapsed crystallographic group on the orthogonal complement of an
// invariant subspace, and the smoothness test for the leaf space.

#include <optional>
#include <vector>

#include "flatcollapse/crystal_group.hpp"

namespace flatcollapse {

struct CollapsedGroup {
  RatSubspace w;           // collapsed directions (rational closure if W was algebraic)
  RatSubspace w_perp;      // G-orthogonal complement of w
  MatQ chart;              // rows: Z-basis of the collapsed lattice, ambient coordinates
  Sublattice lattice;      // the collapsed lattice in ambient coordinates
  Sublattice projected;    // projection of Z^n, a finite-index sublattice
  CrystGroup group;        // the collapsed group in chart coordinates
  std::vector<std::size_t> kernel_elements;  // A with A restricted to w_perp = Id
  std::vector<std::size_t> restriction_of;   // parent element -> index in group
};

CollapsedGroup collapse(const CrystGroup& g, const RatSubspace& w);
/// Replaces w by its rational closure first.
CollapsedGroup collapse(const CrystGroup& g, const AlgSubspace& w);

/// Chart coordinates of a point of w_perp (ambient coordinates).
VecQ chart_coordinates(const CollapsedGroup& cg, const VecQ& x);

struct CollapsedInvariants {
  std::size_t holonomy_order = 1;
  Int lattice_index = 1;
};

CollapsedInvariants collapsed_invariants(const CollapsedGroup& cg);

/// True if A acts as the identity on every vector of s.
bool acts_trivially_on(const MatQ& a, const RatSubspace& s);

struct SmoothnessWitness {
  std::size_t element = 0;   // A with A restricted to W-perp != Id
  VecZ lattice_shift;        // l with P_{W-perp}(v_A + l) in Im(A - Id)
  VecQ fixed_point;          // a point of W-perp fixed by the collapsed element
};

struct SmoothnessVerdict {
  bool smooth = true;
  std::optional<SmoothnessWitness> witness;
};

/// Throws NotBieberbach for groups with torsion and NotInvariant.
SmoothnessVerdict is_smooth(const CrystGroup& g, const RatSubspace& w);

}  // namespace flatcollapse
