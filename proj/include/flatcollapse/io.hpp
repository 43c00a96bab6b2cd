#pragma once

// JSON file formats for groups, subspaces and points. Rationals are written
// as "p/q" strings; integers may appear as numbers or strings on input.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "flatcollapse/crystal_group.hpp"

namespace flatcollapse {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

/// {"dim", "gram", "generators": [{"matrix", "translation"}]}.
CrystGroup load_group(const Json& j);
Json group_to_json(const CrystGroup& g);

/// A subspace file holds either {"basis"} or the algebraic variant
/// {"minpoly", "root_interval", "basis_nf"} with coefficients low to high.
struct SubspaceInput {
  AlgSubspace algebraic;
  std::optional<RatSubspace> rational;  // set when the span is rational
};
SubspaceInput load_subspace(const Json& j, std::size_t ambient);

/// "a/b,c/d,..."
VecQ parse_point(const std::string& text, std::size_t ambient);

Json to_json(const Rat& r);
Json to_json(const Int& z);
Json to_json(const VecQ& v);
Json to_json(const VecZ& v);
Json to_json(const MatQ& m);
Json to_json(const MatZ& m);
Json to_json(const RatSubspace& w);
Json to_json(const AlgSubspace& w);
Json to_json(const Sublattice& l);

}  // namespace flatcollapse
