#include "flatcollapse/number_field.hpp"

#include <sstream>

namespace flatcollapse {

NumberField::NumberField(const Poly& minpoly, const Rat& lo, const Rat& hi)
    : minpoly_(minpoly), lo_(lo), hi_(hi) {
  if (minpoly.degree() < 1) throw Error(ErrorCode::kInvalidArgument, "minimal polynomial must have degree >= 1");
  if (minpoly.lead() != 1) throw Error(ErrorCode::kInvalidArgument, "minimal polynomial must be monic");
  for (const auto& c : minpoly.coeffs())
    if (!is_integer(c)) throw Error(ErrorCode::kInvalidArgument, "minimal polynomial must be integral");
  if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "root interval must satisfy lo < hi");
  const Factorization fac = factor_over_q(minpoly, kMaxFactorDegree);
  if (fac.factors.size() != 1 || fac.factors[0].second != 1)
    throw Error(ErrorCode::kInvalidArgument, "minimal polynomial " + minpoly.to_string() + " is reducible");
  // Closed interval: roots in (lo, hi] plus a root at lo itself.
  int roots = count_real_roots(minpoly, lo, hi);
  if (is_zero(minpoly.eval(lo))) ++roots;
  if (roots != 1)
    throw Error(ErrorCode::kInvalidArgument,
                "root interval must isolate exactly one real root (found " + std::to_string(roots) + ")");

  Rat a = lo, b = hi;
  if (is_zero(minpoly.eval(a))) {
    b = a;
  } else if (is_zero(minpoly.eval(b))) {
    a = b;
  } else {
    const int sa = sgn(minpoly.eval(a));
    const Rat eps(Int(1), Int(1) << 80);
    while (b - a > eps) {
      Rat mid = (a + b) / 2;
      const int sm = sgn(minpoly.eval(mid));
      if (sm == 0) {
        a = b = mid;
        break;
      }
      (sm == sa ? a : b) = mid;
    }
  }
  root_q_ = (a + b) / 2;
  root_d_ = root_q_.get_d();
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->minpoly_ = Poly(std::vector<Rat>{Rat(0), Rat(1)});
    f->lo_ = -1;
    f->hi_ = 1;
    f->root_q_ = 0;
    f->root_d_ = 0.0;
    return FieldPtr(f);
  }();
  return q;
}

namespace {

FieldPtr common_field(const NFElem& a, const NFElem& b) {
  if (!a.field()) return b.field();
  if (!b.field()) return a.field();
  if (a.field() != b.field() && !a.field()->same_as(*b.field()))
    throw Error(ErrorCode::kFieldMismatch, "operands belong to different number fields");
  return a.field();
}

std::vector<Rat> padded(const NFElem& x, std::size_t d) {
  std::vector<Rat> c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = x.coeff(j);
  return c;
}

std::size_t degree_of(const FieldPtr& f) { return f ? static_cast<std::size_t>(f->degree()) : 1; }

}  // namespace

NFElem::NFElem(const Rat& r) : coeffs_{r} { normalize(); }

NFElem::NFElem(FieldPtr field, std::vector<Rat> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (field_ && coeffs_.size() > static_cast<std::size_t>(field_->degree())) {
    // Reduce modulo the minimal polynomial.
    Poly r = divmod(Poly(coeffs_), field_->minpoly()).remainder;
    coeffs_ = r.coeffs();
  }
  normalize();
}

NFElem NFElem::rational(FieldPtr field, const Rat& r) { return NFElem(std::move(field), {r}); }

NFElem NFElem::generator(FieldPtr field) { return NFElem(std::move(field), {Rat(0), Rat(1)}); }

void NFElem::normalize() {
  while (!coeffs_.empty() && flatcollapse::is_zero(coeffs_.back())) coeffs_.pop_back();
}

std::vector<Rat> NFElem::coefficients() const { return padded(*this, degree_of(field_)); }

bool NFElem::is_zero() const { return coeffs_.empty(); }

bool NFElem::is_rational() const { return coeffs_.size() <= 1; }

double NFElem::to_double() const {
  if (!field_ || is_rational()) return coeff(0).get_d();
  // Exact evaluation at the high-precision rational root, then rounding.
  return Poly(coeffs_).eval(field_->root_rational()).get_d();
}

NFElem operator+(const NFElem& a, const NFElem& b) {
  FieldPtr f = common_field(a, b);
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<Rat> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = a.coeff(j) + b.coeff(j);
  return NFElem(std::move(f), std::move(c));
}

NFElem operator-(const NFElem& a, const NFElem& b) {
  FieldPtr f = common_field(a, b);
  const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
  std::vector<Rat> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = a.coeff(j) - b.coeff(j);
  return NFElem(std::move(f), std::move(c));
}

NFElem NFElem::operator-() const { return NFElem() - *this; }

NFElem operator*(const NFElem& a, const NFElem& b) {
  FieldPtr f = common_field(a, b);
  const Poly p = Poly(a.coeffs_) * Poly(b.coeffs_);
  return NFElem(std::move(f), p.coeffs());
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of zero in number field");
  if (is_rational()) return NFElem(field_, {Rat(1) / coeffs_[0]});
  // Extended Euclid: s*a + t*f = 1.
  Poly r0 = field_->minpoly(), r1(coeffs_);
  Poly s0, s1 = Poly::constant(Rat(1));
  while (!r1.is_zero()) {
    const PolyDivision qr = divmod(r0, r1);
    Poly s2 = s0 - qr.quotient * s1;
    r0 = std::move(r1);
    r1 = qr.remainder;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since the minimal polynomial is irreducible.
  const Rat c = r0.coeff(0);
  std::vector<Rat> inv = s0.coeffs();
  for (auto& x : inv) x /= c;
  return NFElem(field_, std::move(inv));
}

NFElem operator/(const NFElem& a, const NFElem& b) {
  common_field(a, b);
  return a * b.inverse();
}

bool operator==(const NFElem& a, const NFElem& b) {
  common_field(a, b);
  return a.coeffs_ == b.coeffs_;
}

std::string NFElem::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (flatcollapse::is_zero(coeffs_[j])) continue;
    if (!first) os << " + ";
    os << flatcollapse::to_string(coeffs_[j]);
    if (j >= 1) os << "*a";
    if (j >= 2) os << "^" << j;
    first = false;
  }
  return os.str();
}

std::vector<VecQ> nf_components(const VecNF& v, const FieldPtr& field) {
  for (const auto& x : v)
    if (x.field() && x.field() != field && !x.field()->same_as(*field))
      throw Error(ErrorCode::kFieldMismatch, "vector entry belongs to a different number field");
  const std::size_t d = static_cast<std::size_t>(field->degree());
  std::vector<VecQ> comps(d, VecQ(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) comps[j][i] = v[i].coeff(j);
  return comps;
}

VecNF nf_from_components(const std::vector<VecQ>& comps, const FieldPtr& field) {
  if (comps.empty()) return {};
  VecNF v;
  for (std::size_t i = 0; i < comps[0].size(); ++i) {
    std::vector<Rat> c;
    for (const auto& w : comps) c.push_back(w[i]);
    v.emplace_back(field, std::move(c));
  }
  return v;
}

std::vector<double> nf_embed(const VecNF& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

}  // namespace flatcollapse
