#pragma once

// Univariate polynomials over Q and bounded factorization.

#include <string>
#include <utility>
#include <vector>

#include "flatcollapse/rational.hpp"

namespace flatcollapse {

/// Maximum degree accepted by factor_over_q.
inline constexpr int kMaxFactorDegree = 12;

class Poly {
 public:
  Poly() = default;
  /// Coefficients from the constant term upward; trailing zeros are trimmed.
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c);
  static Poly x_minus(const Rat& root);
  static Poly from_ints(const std::vector<long>& coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
  Rat lead() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

  Rat eval(const Rat& x) const;
  double eval(double x) const;
  Poly derivative() const;
  Poly monic() const;

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& p, int e);

/// Integer primitive polynomial with positive leading coefficient that is a
/// rational multiple of p. Returned as integer coefficients.
std::vector<Int> primitive_part(const Poly& p);

/// det(x*Id - m).
Poly characteristic_polynomial(const MatQ& m);
/// p(m) by Horner's rule.
MatQ evaluate_at(const Poly& p, const MatQ& m);

struct Factorization {
  Rat unit;                                  // p == unit * prod(f_i^{m_i})
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible factors with multiplicity
};

/// Factorization over Q by exhaustive (Kronecker) search over integer factor
/// candidates, each filtered by the Mignotte coefficient bound. Irreducibility
/// of every returned factor is certified by the exhaustive search itself.
/// Throws DegreeCapExceeded if deg p > degcap or degcap > kMaxFactorDegree.
Factorization factor_over_q(const Poly& p, int degcap = kMaxFactorDegree);

/// Number of distinct real roots in the half-open interval (lo, hi], by a
/// Sturm sequence.
int count_real_roots(const Poly& p, const Rat& lo, const Rat& hi);

}  // namespace flatcollapse
