#pragma once

// Shared helpers for the unit tests and the acceptance driver.

#include <random>
#include <string>
#include <vector>

#include "flatcollapse/io.hpp"
#include "flatcollapse/normal_form.hpp"

namespace fc_test {

using namespace flatcollapse;

inline std::string fixture_path(const std::string& name) {
  return std::string(FLATCOLLAPSE_FIXTURE_DIR) + "/" + name + ".json";
}

inline CrystGroup fixture(const std::string& name) { return load_group(read_json_file(fixture_path(name))); }

inline SubspaceInput fixture_subspace(const std::string& name, std::size_t n) {
  return load_subspace(read_json_file(fixture_path(name)), n);
}

inline VecQ q(std::initializer_list<const char*> xs) {
  VecQ v;
  for (const char* x : xs) v.push_back(parse_rat(x));
  return v;
}

inline MatZ z(std::initializer_list<std::initializer_list<long>> rows) {
  MatZ m;
  for (const auto& r : rows) {
    VecZ row;
    for (long x : r) row.emplace_back(x);
    m.append_row(row);
  }
  return m;
}

inline RatSubspace span_of(std::size_t n, std::initializer_list<std::size_t> axes) {
  std::vector<VecQ> vs;
  for (std::size_t i : axes) vs.push_back(unit_vector(n, i));
  return RatSubspace::from_spanning(n, vs);
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rat random_rat(std::mt19937_64& rng, long height) {
  return make_rat(uniform(rng, -height, height), uniform(rng, 1, height));
}

inline VecQ random_vec(std::mt19937_64& rng, std::size_t n, long height) {
  VecQ v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_rat(rng, height));
  return v;
}

inline MatZ random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long height) {
  MatZ m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -height, height);
  return m;
}

/// Product of random elementary row operations and sign flips.
inline MatZ random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
  MatZ u = MatZ::identity(n);
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1)) u(0, 0) = -1;
    return u;
  }
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long c = uniform(rng, -2, 2);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    if (uniform(rng, 0, 3) == 0) u.swap_rows(i, j);
  }
  return u;
}

}  // namespace fc_test
