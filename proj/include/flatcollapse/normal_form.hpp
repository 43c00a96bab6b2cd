#pragma once

// Integer normal forms. Row convention throughout: H = U * M.

#include <optional>

#include "flatcollapse/rational.hpp"

namespace flatcollapse {

struct HermiteForm {
  MatZ h;  // row Hermite normal form of the input
  MatZ u;  // unimodular, h == u * input
  std::size_t rank = 0;
};

/// Row Hermite normal form: positive pivots, entries above each pivot reduced
/// into [0, pivot), zero rows last.
HermiteForm hnf(const MatZ& m);

struct SmithForm {
  MatZ s;  // diagonal, s_1 | s_2 | ... , all >= 0
  MatZ u;  // unimodular (rows x rows)
  MatZ v;  // unimodular (cols x cols), s == u * m * v
  std::size_t rank = 0;
};

SmithForm snf(const MatZ& m);

bool is_hermite_normal_form(const MatZ& h);
bool is_smith_normal_form(const MatZ& s);
bool is_unimodular(const MatZ& m);

/// Integer coefficients c with sum_i c_i * gens[i] == target, if any exist.
/// gens are rational row vectors of a common length.
std::optional<VecZ> integer_combination(const std::vector<VecQ>& gens, const VecQ& target);

}  // namespace flatcollapse
