#pragma once

// Leaves of the foliation of a flat orbifold by translates of an invariant
// rational subspace W.

#include <optional>
#include <utility>
#include <vector>

#include "flatcollapse/crystal_group.hpp"

namespace flatcollapse {

struct HolonomyEntry {
  std::size_t element = 0;  // index of A in the point group
  VecZ shift;               // l with (A - Id) u + v_A + l in W
};

struct LeafData {
  VecQ u;
  std::vector<HolonomyEntry> holonomy;  // sorted by element index, identity first
  Sublattice leaf_lattice;              // translation lattice of the leaf group, inside W
  std::size_t holonomy_order = 1;       // number of distinct restrictions A|_W
  Rat vol_sq;                           // covolume^2 / holonomy_order^2
};

LeafData leaf_group(const CrystGroup& g, const RatSubspace& w, const VecQ& u);

bool same_leaf(const CrystGroup& g, const RatSubspace& w, const VecQ& u, const VecQ& u2);

struct LeafClass {
  bool principal = true;
  Rat vol_sq;
  Rat principal_vol_sq;
  Int covering_index = 1;  // vol(principal) / vol(leaf)
};

/// Throws NotBieberbach and NotInvariant.
LeafClass classify_leaf(const CrystGroup& g, const RatSubspace& w, const VecQ& u);

/// Holonomy elements of every principal leaf: A|_{W-perp} = Id and some lift
/// of A translates along W.
std::vector<std::size_t> principal_holonomy(const CrystGroup& g, const RatSubspace& w);

struct Stratum {
  std::size_t element = 0;
  RatSubspace direction;      // (A - Id)^{-1}(W)
  VecQ offset;                // one point of the stratum
  Sublattice offset_lattice;  // offsets of all strata of this element differ by this lattice
};

struct SingularLocus {
  std::vector<Stratum> strata;
  bool complete = true;
};

SingularLocus singular_leaf_locus(const CrystGroup& g, const RatSubspace& w);

/// Exact test whether u lies on some stratum.
bool on_singular_locus(const SingularLocus& locus, const VecQ& u);

/// Representatives of the exceptional leaves, one per leaf, when every
/// stratum is a single leaf family parallel to W. nullopt if some stratum has
/// a larger direction (a continuum of exceptional leaves).
std::optional<std::vector<VecQ>> exceptional_leaves(const CrystGroup& g, const RatSubspace& w);

/// Proper nontrivial invariant rational subspace and an invariant complement.
/// Throws NoProperInvariantSubspaceFound.
std::pair<RatSubspace, RatSubspace> transverse_pair(const CrystGroup& g);

}  // namespace flatcollapse
