#include "flatcollapse/rational.hpp"

#include <cctype>

namespace flatcollapse {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kNotGramOrthogonal: return "NotGramOrthogonal";
    case ErrorCode::kCocycleViolation: return "CocycleViolation";
    case ErrorCode::kPointGroupBoundExceeded: return "PointGroupBoundExceeded";
    case ErrorCode::kElementNotInPointGroup: return "ElementNotInPointGroup";
    case ErrorCode::kNotInvariant: return "NotInvariant";
    case ErrorCode::kIrrationalInput: return "IrrationalInput";
    case ErrorCode::kNotBieberbach: return "NotBieberbach";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kNoProperInvariantSubspaceFound: return "NoProperInvariantSubspaceFound";
    case ErrorCode::kBudgetLimited: return "BudgetLimited";
    case ErrorCode::kRadiusTooSmall: return "RadiusTooSmall";
  }
  return "Unknown";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_int_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_int(std::string_view s) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Int(t, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int_literal(s)) throw Error(ErrorCode::kParseError, "not a rational: '" + std::string(text) + "'");
    return Rat(parse_int(s));
  }
  const auto num = trim(s.substr(0, slash));
  const auto den = trim(s.substr(slash + 1));
  if (!is_int_literal(num) || !is_int_literal(den) || den[0] == '-')
    throw Error(ErrorCode::kParseError, "not a rational: '" + std::string(text) + "'");
  const Int d = parse_int(den);
  if (d == 0) throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(text) + "'");
  return make_rat(parse_int(num), d);
}

std::string to_string(const Rat& r) { return r.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rat frac(const Rat& x) {
  Int fl = floor_div(x.get_num(), x.get_den());
  return x - Rat(fl);
}

Int lcm_of_denominators(const VecQ& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

MatQ to_rational(const MatZ& m) {
  MatQ q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

std::optional<MatZ> to_integer(const MatQ& m) {
  MatZ z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) return std::nullopt;
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

VecQ mat_vec(const MatQ& m, const VecQ& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::kInvalidArgument, "matrix-vector shape mismatch");
  VecQ out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) out[i] += m(i, j) * v[j];
  return out;
}

VecQ mat_vec(const MatZ& m, const VecQ& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::kInvalidArgument, "matrix-vector shape mismatch");
  VecQ out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[i] += Rat(m(i, j)) * v[j];
  return out;
}

VecQ add(const VecQ& a, const VecQ& b) {
  VecQ c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

VecQ sub(const VecQ& a, const VecQ& b) {
  VecQ c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

VecQ scale(const VecQ& a, const Rat& s) {
  VecQ c = a;
  for (auto& x : c) x *= s;
  return c;
}

VecQ negate(const VecQ& a) { return scale(a, Rat(-1)); }

VecQ zero_vector(std::size_t n) { return VecQ(n); }

VecQ unit_vector(std::size_t n, std::size_t i) {
  VecQ v(n);
  v[i] = 1;
  return v;
}

bool is_zero_vector(const VecQ& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

VecQ to_rational(const VecZ& v) {
  VecQ q;
  q.reserve(v.size());
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

VecQ reduce_mod_one(const VecQ& v) {
  VecQ r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(frac(x));
  return r;
}

bool is_integral(const VecQ& v) {
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

std::size_t rank(const MatQ& m) {
  MatQ t = m;
  return rref_in_place(t).size();
}

MatQ nullspace(const MatQ& m) { return nullspace<Rat>(m, Rat(0), Rat(1)); }

std::optional<VecQ> solve(const MatQ& m, const VecQ& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::kInvalidArgument, "solve shape mismatch");
  MatQ aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  VecQ x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

MatQ inverse(const MatQ& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::kInvalidArgument, "inverse of non-square matrix");
  MatQ aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref_in_place(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw Error(ErrorCode::kInvalidArgument, "singular matrix");
  MatQ inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Rat determinant(const MatQ& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::kInvalidArgument, "determinant of non-square matrix");
  MatQ a = m;
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      const Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Int determinant(const MatZ& m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::kInvalidArgument, "determinant of non-square matrix");
  if (n == 0) return 1;
  MatZ a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat trace(const MatQ& m) {
  Rat t = 0;
  for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i) t += m(i, i);
  return t;
}

}  // namespace flatcollapse
