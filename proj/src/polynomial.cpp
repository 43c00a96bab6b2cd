#include "flatcollapse/polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace flatcollapse {

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && flatcollapse::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::x_minus(const Rat& root) { return Poly(std::vector<Rat>{-root, Rat(1)}); }

Poly Poly::from_ints(const std::vector<long>& coeffs) {
  std::vector<Rat> c;
  for (long x : coeffs) c.emplace_back(x);
  return Poly(std::move(c));
}

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (coeffs_.empty()) return *this;
  std::vector<Rat> c = coeffs_;
  const Rat l = lead();
  for (auto& x : c) x /= l;
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

std::string Poly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = coeffs_[static_cast<std::size_t>(i)];
    if (flatcollapse::is_zero(c)) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    const Rat a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "polynomial division by zero");
  std::vector<Rat> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rat> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    const Rat c = rem[static_cast<std::size_t>(i)] / b.lead();
    quot[static_cast<std::size_t>(i - db)] = c;
    if (is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeff(static_cast<std::size_t>(j));
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly pow(const Poly& p, int e) {
  Poly r = Poly::constant(Rat(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

std::vector<Int> primitive_part(const Poly& p) {
  if (p.is_zero()) return {};
  Int den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> z;
  Int g = 0;
  for (const auto& c : p.coeffs()) {
    z.push_back(Rat(c * den).get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (sgn(p.lead()) < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

Poly characteristic_polynomial(const MatQ& m) {
  // Faddeev-LeVerrier.
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::kInvalidArgument, "characteristic polynomial of non-square matrix");
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  MatQ mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    MatQ next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -trace(m * mk) / Rat(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

MatQ evaluate_at(const Poly& p, const MatQ& m) {
  const std::size_t n = m.rows();
  MatQ acc(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n; ++j) acc(j, j) += c;
  }
  return acc;
}

namespace {

using IntPoly = std::vector<Int>;  // constant term first

Poly to_poly(const IntPoly& z) {
  std::vector<Rat> c;
  for (const auto& x : z) c.emplace_back(x);
  return Poly(std::move(c));
}

Int eval_int(const IntPoly& f, const Int& x) {
  Int acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Positive divisors of |v| (v != 0) by trial division.
std::vector<Int> positive_divisors(const Int& v) {
  Int a = abs(v);
  std::vector<std::pair<Int, int>> primes;
  for (Int p = 2; p * p <= a; ++p) {
    int e = 0;
    while (a % p == 0) {
      a /= p;
      ++e;
    }
    if (e > 0) primes.emplace_back(p, e);
  }
  if (a > 1) primes.emplace_back(a, 1);
  std::vector<Int> divs{Int(1)};
  for (const auto& [p, e] : primes) {
    const std::size_t base = divs.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Int binomial(int n, int k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Newton interpolation through (xs[i], ys[i]) over Q, expanded to monomials.
Poly interpolate(const std::vector<Int>& xs, const std::vector<Int>& ys) {
  const std::size_t m = xs.size();
  std::vector<Rat> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rat(xs[i] - xs[i - level]);
      if (i == level) break;
    }
  Poly result = Poly::constant(dd[m - 1]);
  for (std::size_t k = m - 1; k-- > 0;) {
    result = result * Poly::x_minus(Rat(xs[k])) + Poly::constant(dd[k]);
  }
  return result;
}

// Searches for an integer factor of exact degree d of the primitive,
// squarefree integer polynomial f. Every candidate is generated from
// divisors of f at d+1 sample points (Kronecker) and must satisfy the
// Mignotte bound |g_j| <= C(d, j) * ||f||_2 before trial division.
std::optional<IntPoly> find_factor_of_degree(const IntPoly& f, int d) {
  const int deg = static_cast<int>(f.size()) - 1;
  Int norm_sq = 0;
  for (const auto& c : f) norm_sq += c * c;

  // Sample points with the fewest divisors of f(x).
  struct Sample {
    Int x;
    Int value;
    std::size_t divisor_count;
  };
  std::vector<Sample> samples;
  const int reach = 2 * deg + 8;
  for (int k = 0; k <= 2 * reach; ++k) {
    const long xv = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
    const Int x = xv;
    const Int v = eval_int(f, x);
    if (v == 0) {
      if (d == 1) return IntPoly{-x, Int(1)};
      continue;
    }
    samples.push_back({x, v, positive_divisors(v).size()});
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.divisor_count < b.divisor_count; });
  samples.resize(static_cast<std::size_t>(d + 1));

  std::vector<Int> xs;
  std::vector<std::vector<Int>> choices;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    xs.push_back(samples[i].x);
    std::vector<Int> divs = positive_divisors(samples[i].value);
    std::vector<Int> signed_divs;
    for (const auto& q : divs) {
      signed_divs.push_back(q);
      // g and -g are the same factor up to a unit: fix the sign at the first point.
      if (i > 0) signed_divs.push_back(-q);
    }
    choices.push_back(std::move(signed_divs));
  }

  const Int lead_f = f.back();
  const Poly fp = to_poly(f);
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    std::vector<Int> ys;
    for (std::size_t i = 0; i < idx.size(); ++i) ys.push_back(choices[i][idx[i]]);
    const Poly g = interpolate(xs, ys);
    if (g.degree() == d) {
      bool ok = true;
      IntPoly gz;
      for (int j = 0; j <= d && ok; ++j) {
        const Rat& c = g.coeffs()[static_cast<std::size_t>(j)];
        if (!is_integer(c)) {
          ok = false;
          break;
        }
        const Int b = binomial(d, j);
        if (c.get_num() * c.get_num() > b * b * norm_sq) ok = false;
        gz.push_back(c.get_num());
      }
      if (ok && lead_f % gz.back() == 0) {
        if (divmod(fp, g).remainder.is_zero()) {
          if (gz.back() < 0)
            for (auto& c : gz) c = -c;
          return gz;
        }
      }
    }
    std::size_t k = 0;
    while (k < idx.size()) {
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return std::nullopt;
}

void factor_squarefree(const IntPoly& f, std::vector<Poly>& out) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 0) return;
  for (int d = 1; 2 * d <= deg; ++d) {
    if (auto g = find_factor_of_degree(f, d)) {
      // Smallest-degree factor is irreducible.
      out.push_back(to_poly(*g).monic());
      const Poly rest = divmod(to_poly(f), to_poly(*g)).quotient;
      factor_squarefree(primitive_part(rest), out);
      return;
    }
  }
  out.push_back(to_poly(f).monic());
}

}  // namespace

Factorization factor_over_q(const Poly& p, int degcap) {
  if (degcap > kMaxFactorDegree)
    throw Error(ErrorCode::kDegreeCapExceeded, "degree cap above configured maximum");
  if (p.degree() > degcap)
    throw Error(ErrorCode::kDegreeCapExceeded, "degree " + std::to_string(p.degree()) + " exceeds cap");
  if (p.is_zero()) throw Error(ErrorCode::kInvalidArgument, "cannot factor the zero polynomial");
  Factorization out{p.lead(), {}};
  if (p.degree() == 0) return out;

  // Yun's squarefree decomposition of the monic associate.
  std::map<int, Poly> by_multiplicity;
  Poly a = p.monic();
  Poly b = gcd(a, a.derivative());
  Poly c = divmod(a, b).quotient;
  Poly dpoly = divmod(a.derivative(), b).quotient - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    const Poly g = gcd(c, dpoly);
    if (g.degree() > 0) by_multiplicity[i] = g;
    c = divmod(c, g).quotient;
    dpoly = divmod(dpoly, g).quotient - c.derivative();
    ++i;
  }

  for (const auto& [mult, sq] : by_multiplicity) {
    std::vector<Poly> irreducibles;
    factor_squarefree(primitive_part(sq), irreducibles);
    for (auto& f : irreducibles) out.factors.emplace_back(std::move(f), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    return x.first.coeffs() < y.first.coeffs();
  });
  return out;
}

int count_real_roots(const Poly& p, const Rat& lo, const Rat& hi) {
  if (p.degree() <= 0) return 0;
  const Poly sq = divmod(p, gcd(p, p.derivative())).quotient;
  std::vector<Poly> seq{sq, sq.derivative()};
  while (seq.back().degree() > 0) {
    Poly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
    if (r.is_zero()) break;
    seq.push_back(Poly() - r);
  }
  auto variations = [&](const Rat& x) {
    int count = 0;
    int last = 0;
    for (const auto& s : seq) {
      const int sg = sgn(s.eval(x));
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  return variations(lo) - variations(hi);
}

}  // namespace flatcollapse
