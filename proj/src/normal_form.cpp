#include "flatcollapse/normal_form.hpp"

#include <cstdlib>

namespace flatcollapse {

namespace {

// row[dst] -= q * row[src]
void row_axpy(MatZ& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void col_axpy(MatZ& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_row(MatZ& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

HermiteForm hnf(const MatZ& m) {
  HermiteForm out{m, MatZ::identity(m.rows()), 0};
  MatZ& h = out.h;
  MatZ& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero remains at row r.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      h.swap_rows(best, r);
      u.swap_rows(best, r);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        const Int q = floor_div(h(i, c), h(r, c));
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Int q = floor_div(h(i, c), h(r, c));
      row_axpy(h, i, r, q);
      row_axpy(u, i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

SmithForm snf(const MatZ& m) {
  SmithForm out{m, MatZ::identity(m.rows()), MatZ::identity(m.cols()), 0};
  MatZ& s = out.s;
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    bool block_is_zero = false;
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (s(i, j) == 0) continue;
          if (bi == rows || abs(s(i, j)) < abs(s(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) {
        block_is_zero = true;
        break;
      }
      s.swap_rows(t, bi);
      out.u.swap_rows(t, bi);
      s.swap_cols(t, bj);
      out.v.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        const Int q = floor_div(s(i, t), s(t, t));
        row_axpy(s, i, t, q);
        row_axpy(out.u, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        const Int q = floor_div(s(t, j), s(t, t));
        col_axpy(s, j, t, q);
        col_axpy(out.v, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and start over.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(s, t, bad, Int(-1));
      row_axpy(out.u, t, bad, Int(-1));
    }
    if (block_is_zero) break;
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(out.u, t);
    }
  }
  out.rank = t;
  return out;
}

bool is_hermite_normal_form(const MatZ& h) {
  std::size_t prev_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && p <= prev_pivot) return false;
    if (h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    for (std::size_t k = i + 1; k < h.rows(); ++k)
      if (h(k, p) != 0) return false;
    prev_pivot = p;
  }
  return true;
}

bool is_smith_normal_form(const MatZ& s) {
  const std::size_t d = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  for (std::size_t i = 0; i < d; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < d) {
      if (s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
      if (s(i, i) != 0 && s(i + 1, i + 1) % s(i, i) != 0) return false;
    }
  }
  return true;
}

bool is_unimodular(const MatZ& m) {
  if (m.rows() != m.cols()) return false;
  return abs(determinant(m)) == 1;
}

std::optional<VecZ> integer_combination(const std::vector<VecQ>& gens, const VecQ& target) {
  const std::size_t n = target.size();
  if (gens.empty()) {
    if (is_zero_vector(target)) return VecZ{};
    return std::nullopt;
  }
  Int denom = lcm_of_denominators(target);
  for (const auto& g : gens) {
    if (g.size() != n) throw Error(ErrorCode::kInvalidArgument, "generator length mismatch");
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), lcm_of_denominators(g).get_mpz_t());
  }
  MatZ m(gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(gens[i][j] * denom).get_num();
  VecZ t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = Rat(target[j] * denom).get_num();

  const HermiteForm hf = hnf(m);
  // Forward substitution along the echelon pivots: t == y * H.
  VecZ y(hf.rank);
  VecZ rem = t;
  std::size_t col = 0;
  for (std::size_t r = 0; r < hf.rank; ++r) {
    while (hf.h(r, col) == 0) {
      if (rem[col] != 0) return std::nullopt;
      ++col;
    }
    if (rem[col] % hf.h(r, col) != 0) return std::nullopt;
    y[r] = rem[col] / hf.h(r, col);
    for (std::size_t j = col; j < n; ++j) rem[j] -= y[r] * hf.h(r, j);
    ++col;
  }
  for (std::size_t j = 0; j < n; ++j)
    if (rem[j] != 0) return std::nullopt;
  VecZ c(gens.size());
  for (std::size_t r = 0; r < hf.rank; ++r)
    for (std::size_t i = 0; i < gens.size(); ++i) c[i] += y[r] * hf.u(r, i);
  return c;
}

}  // namespace flatcollapse
