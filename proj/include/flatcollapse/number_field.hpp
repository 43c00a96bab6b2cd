#pragma once

// A real number field Q(alpha) given by a monic irreducible integer minimal
// polynomial and an isolating interval for the chosen real root.

#include <memory>
#include <string>
#include <vector>

#include "flatcollapse/polynomial.hpp"
#include "flatcollapse/rational.hpp"

namespace flatcollapse {

class NumberField {
 public:
  /// Validates that minpoly is monic, integral, irreducible and has exactly
  /// one real root in [lo, hi].
  NumberField(const Poly& minpoly, const Rat& lo, const Rat& hi);

  /// Q itself, presented as Q[x]/(x) with root 0.
  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return minpoly_.degree(); }
  const Poly& minpoly() const { return minpoly_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  /// Rational approximation of the root with error below 2^-80.
  const Rat& root_rational() const { return root_q_; }
  double root() const { return root_d_; }

  bool same_as(const NumberField& o) const {
    return minpoly_ == o.minpoly_ && lo_ == o.lo_ && hi_ == o.hi_;
  }

 private:
  NumberField() = default;
  Poly minpoly_;
  Rat lo_, hi_;
  Rat root_q_;
  double root_d_ = 0.0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// c_0 + c_1 alpha + ... + c_{d-1} alpha^{d-1}. A default-constructed or
/// rational-constructed element carries no field and acts as a rational
/// constant in mixed arithmetic.
class NFElem {
 public:
  NFElem() = default;
  NFElem(const Rat& r);  // NOLINT(google-explicit-constructor)
  NFElem(long r) : NFElem(Rat(r)) {}  // NOLINT(google-explicit-constructor)
  NFElem(FieldPtr field, std::vector<Rat> coeffs);

  static NFElem rational(FieldPtr field, const Rat& r);
  static NFElem generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  /// Coefficient of alpha^j (zero beyond the stored range).
  Rat coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Rat(0); }
  /// Exactly d coefficients (d = 1 when no field is attached).
  std::vector<Rat> coefficients() const;

  bool is_zero() const;
  bool is_rational() const;
  double to_double() const;

  NFElem inverse() const;

  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  NFElem operator-() const;
  NFElem& operator+=(const NFElem& b) { return *this = *this + b; }
  NFElem& operator-=(const NFElem& b) { return *this = *this - b; }
  NFElem& operator*=(const NFElem& b) { return *this = *this * b; }
  friend bool operator==(const NFElem& a, const NFElem& b);

  std::string to_string() const;

 private:
  void normalize();
  FieldPtr field_;
  std::vector<Rat> coeffs_;  // trimmed of trailing zeros, length < degree
};

inline bool is_zero(const NFElem& x) { return x.is_zero(); }

using VecNF = std::vector<NFElem>;
using MatNF = Matrix<NFElem>;

/// Components w_0..w_{d-1} with v = sum_j alpha^j w_j entrywise.
/// Throws FieldMismatch if an entry belongs to another field.
std::vector<VecQ> nf_components(const VecNF& v, const FieldPtr& field);

/// Inverse of nf_components.
VecNF nf_from_components(const std::vector<VecQ>& comps, const FieldPtr& field);

std::vector<double> nf_embed(const VecNF& v);

}  // namespace flatcollapse
