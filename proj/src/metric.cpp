#include "flatcollapse/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

namespace flatcollapse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MatD inverse_d(const MatD& m) {
  const std::size_t n = m.rows();
  MatD a = m;
  MatD inv = MatD::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a(r, c)) > std::fabs(a(p, c))) p = r;
    if (a(p, c) == 0.0) throw Error(ErrorCode::kInvalidArgument, "singular matrix in numeric inverse");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    const double piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0.0) continue;
      const double f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

VecD mul(const MatD& m, const VecD& v) {
  VecD out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

double quad(const MatD& q, const VecD& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) row += q(i, j) * d[j];
    s += d[i] * row;
  }
  return s;
}

std::vector<std::pair<VecD, VecD>> sample_pairs(std::size_t n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<VecD, VecD>> pairs;
  for (int k = 0; k < count; ++k) {
    VecD x(n), y(n);
    for (auto& c : x) c = unit(rng);
    for (auto& c : y) c = unit(rng);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return pairs;
}

MatD projector_from_rows(const MatD& b, const GramForm& g) {
  const std::size_t n = g.dim();
  if (b.rows() == 0) return MatD(n, n, 0.0);
  const MatD gd = to_double(g.matrix());
  const MatD bg = b * gd;
  return b.transpose() * inverse_d(bg * b.transpose()) * bg;
}

}  // namespace

MatD to_double(const MatQ& m) {
  MatD d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
  return d;
}

VecD to_double(const VecQ& v) {
  VecD d;
  d.reserve(v.size());
  for (const auto& x : v) d.push_back(x.get_d());
  return d;
}

MatD numeric_projector(const RatSubspace& w, const GramForm& g) { return to_double(projector(w, g)); }

MatD numeric_projector(const AlgSubspace& w, const GramForm& g) {
  MatD b(w.dim(), w.ambient());
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < w.ambient(); ++j) b(i, j) = w.basis()(i, j).to_double();
  return projector_from_rows(b, g);
}

MatD scaled_form(const MatD& pw, const GramForm& g, double s) {
  const std::size_t n = g.dim();
  const MatD gd = to_double(g.matrix());
  MatD pp = MatD::identity(n) - pw;
  MatD a = pw.transpose() * gd * pw;
  MatD b = pp.transpose() * gd * pp;
  MatD q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = s * s * a(i, j) + b(i, j);
  return q;
}

OrbitDistance::OrbitDistance(const CrystGroup& g, MatD form, double radius, double tol)
    : form_(std::move(form)), radius_(radius), tol_(tol) {
  for (std::size_t i = 0; i < g.order(); ++i) {
    mats_.push_back(to_double(g.element_q(i)));
    trans_.push_back(to_double(g.translation(i)));
  }
  const std::size_t n = form_.rows();
  if (n == 0) return;
  const MatD inv = inverse_d(form_);
  for (std::size_t i = 0; i < n; ++i) box_.push_back((radius_ + 1.0) * std::sqrt(std::max(inv(i, i), 0.0)));
}

double OrbitDistance::operator()(const VecD& x, const VecD& y) const {
  const std::size_t n = form_.rows();
  if (n == 0) return 0.0;
  double best_all = kInf, best_in = kInf;
  const double r2 = radius_ * radius_;
  std::vector<long> lo(n), hi(n), l(n);
  VecD d(n);
  for (std::size_t a = 0; a < mats_.size(); ++a) {
    const VecD ay = mul(mats_[a], y);
    VecD z0(n);
    for (std::size_t i = 0; i < n; ++i) {
      z0[i] = x[i] - ay[i] - trans_[a][i];
      lo[i] = static_cast<long>(std::ceil(z0[i] - box_[i]));
      hi[i] = static_cast<long>(std::floor(z0[i] + box_[i]));
      if (lo[i] > hi[i]) lo[i] = hi[i] = std::lround(z0[i]);
      l[i] = lo[i];
    }
    while (true) {
      for (std::size_t i = 0; i < n; ++i) d[i] = z0[i] - static_cast<double>(l[i]);
      const double q = quad(form_, d);
      best_all = std::min(best_all, q);
      if (q <= r2) best_in = std::min(best_in, q);
      std::size_t k = 0;
      while (k < n && l[k] == hi[k]) {
        l[k] = lo[k];
        ++k;
      }
      if (k == n) break;
      ++l[k];
    }
  }
  const double dist = std::sqrt(best_all);
  if (best_in == kInf || std::sqrt(best_in) - dist > tol_)
    throw Error(ErrorCode::kRadiusTooSmall, "enumeration radius does not cover the orbit distance");
  return dist;
}

double flat_distance(const CrystGroup& g, const MatD& pw, double s, const VecD& x, const VecD& y,
                     const MetricConfig& cfg) {
  if (!(s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "scale s must be positive");
  return OrbitDistance(g, scaled_form(pw, g.gram(), s), cfg.enum_radius, cfg.tol)(x, y);
}

double diameter_s(const RatSubspace& closure, const MatD& pw, const GramForm& g, double s,
                  const MetricConfig& cfg) {
  const std::size_t k = closure.dim();
  if (k == 0) return 0.0;
  const Sublattice lhat = subspace_lattice(closure).lattice;
  const MatD b = to_double(MatQ::from_rows(lhat.basis(), g.dim()));
  const MatD qhat = b * scaled_form(pw, g, s) * b.transpose();
  const CrystGroup trivial = CrystGroup::from_generators(GramForm::identity(k), {});
  const OrbitDistance dist(trivial, qhat, cfg.enum_radius, cfg.tol);
  const VecD origin(k, 0.0);
  auto f = [&](const VecD& t) { return dist(t, origin); };

  std::size_t per_axis = 2;
  while (std::pow(static_cast<double>(per_axis), static_cast<double>(k)) < 200.0) per_axis += 2;
  auto grid_max = [&](std::size_t m, std::vector<std::pair<double, VecD>>& top) {
    top.clear();
    std::vector<std::size_t> idx(k, 0);
    VecD t(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<double>(idx[i]) / static_cast<double>(m);
      top.emplace_back(f(t), t);
      std::size_t j = 0;
      while (j < k && idx[j] + 1 == m) idx[j++] = 0;
      if (j == k) break;
      ++idx[j];
    }
    std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(4, top.size())),
                      top.end(), [](const auto& a, const auto& c) { return a.first > c.first; });
    top.resize(std::min<std::size_t>(4, top.size()));
    return top.front().first;
  };

  std::vector<std::pair<double, VecD>> top;
  double current = grid_max(per_axis, top);
  while (std::pow(static_cast<double>(2 * per_axis), static_cast<double>(k)) <= 40000.0) {
    per_axis *= 2;
    const double refined = grid_max(per_axis, top);
    const bool stable = std::fabs(refined - current) <= cfg.tol;
    current = std::max(current, refined);
    if (stable) break;
  }

  // Pattern search from the best grid points.
  for (auto& [value, t] : top) {
    double h = 0.5 / static_cast<double>(per_axis);
    while (h > 1e-10) {
      bool improved = false;
      for (std::size_t i = 0; i < k && !improved; ++i)
        for (double sign : {1.0, -1.0}) {
          VecD cand = t;
          cand[i] += sign * h;
          const double v = f(cand);
          if (v > value) {
            value = v;
            t = std::move(cand);
            improved = true;
            break;
          }
        }
      if (!improved) h *= 0.5;
    }
    current = std::max(current, value);
  }
  return current;
}

namespace {

MetricReport run_metric_check(const CrystGroup& g, const MatD& pw, const RatSubspace& closure,
                              const MetricConfig& cfg) {
  const std::size_t n = g.dim();
  const GramForm& gram = g.gram();
  const MatD pwhat = numeric_projector(closure, gram);
  const CollapsedGroup cg = collapse(g, closure);
  const std::size_t m = cg.group.dim();

  // Phi: chart coordinates of the projection onto the complement of the closure.
  MatD phi(m, n);
  if (m > 0) {
    const MatQ c = cg.chart;
    const MatQ gq = gram.matrix();
    const MatQ exact = inverse(c * gq * c.transpose()) * c * gq * projector(cg.w_perp, gram);
    phi = to_double(exact);
  }
  const OrbitDistance delta(cg.group, m > 0 ? to_double(cg.group.gram().matrix()) : MatD(0, 0), cfg.enum_radius,
                            cfg.tol);
  const auto pairs = sample_pairs(n, cfg.pair_count, cfg.seed);

  MetricReport report;
  for (double s : cfg.s_values) {
    if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "scale values must lie in (0, 1]");
    MetricRecord rec;
    rec.s = s;
    rec.d_s = diameter_s(closure, pw, gram, s, cfg);
    const OrbitDistance rho(g, scaled_form(pw, gram, s), cfg.enum_radius, cfg.tol);
    const OrbitDistance rhohat(g, scaled_form(pwhat, gram, s), cfg.enum_radius, cfg.tol);
    double chain = 0.0;
    double defect = -kInf;
    for (const auto& [x, y] : pairs) {
      const double r = rho(x, y);
      const double rh = rhohat(x, y);
      const double dl = m > 0 ? delta(mul(phi, x), mul(phi, y)) : 0.0;
      chain = std::max({chain, dl - rh, rh - r, r - dl - 2.0 * rec.d_s});
      defect = std::max(defect, std::fabs(r - dl) - 2.0 * rec.d_s);
    }
    rec.max_chain_violation = chain;
    rec.max_approx_defect = defect;
    if (chain > cfg.tol || defect > cfg.tol) report.pass = false;
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace

MetricReport verify_collapse_metric(const CrystGroup& g, const RatSubspace& w, const MetricConfig& cfg) {
  require_invariant(g, w);
  return run_metric_check(g, numeric_projector(w, g.gram()), w, cfg);
}

MetricReport verify_collapse_metric(const CrystGroup& g, const AlgSubspace& w, const MetricConfig& cfg) {
  for (std::size_t i = 1; i < g.order(); ++i)
    if (!w.is_invariant(g.element_q(i)))
      throw Error(ErrorCode::kNotInvariant, "subspace is not invariant under the point group");
  const ClosureResult cl = l_closure(w, g.gram());
  return run_metric_check(g, numeric_projector(w, g.gram()), cl.closure, cfg);
}

double conjugated_distance(const CrystGroup& g, const MatD& pw, double s, const VecD& x, const VecD& y) {
  const std::size_t n = g.dim();
  if (n == 0) return 0.0;
  const MatD gd = to_double(g.gram().matrix());
  // A_s = s P_W + P_{W-perp}; the conjugated group has lattice basis A_s e_i.
  MatD as(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) as(i, j) = s * pw(i, j) + ((i == j ? 1.0 : 0.0) - pw(i, j));
  const MatD as_inv = inverse_d(as);
  const MatD gram_basis = as.transpose() * gd * as;

  // Cholesky gram_basis = R^T R with R upper triangular.
  MatD r(n, n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = gram_basis(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= r(k, j) * r(k, j);
    r(j, j) = std::sqrt(std::max(diag, 0.0));
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = gram_basis(j, i);
      for (std::size_t k = 0; k < j; ++k) v -= r(k, j) * r(k, i);
      r(j, i) = v / r(j, j);
    }
  }

  const VecD xs = mul(as, x);
  const VecD ys = mul(as, y);
  double best = kInf;
  for (std::size_t a = 0; a < g.order(); ++a) {
    const MatD conj = as * to_double(g.element_q(a)) * as_inv;
    const VecD ay = mul(conj, ys);
    const VecD av = mul(as, to_double(g.translation(a)));
    VecD w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = xs[i] - ay[i] - av[i];
    const VecD c = mul(as_inv, w);  // target in lattice-basis coordinates

    // Babai rounding gives a starting bound; depth-first enumeration from
    // the last coordinate then visits every integer within that bound.
    VecD ell(n, 0.0);
    auto level_center = [&](std::size_t i, double& shift) {
      shift = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) shift += r(i, j) * (c[j] - ell[j]);
      return c[i] + shift / r(i, i);
    };
    double babai = 0.0;
    for (std::size_t i = n; i-- > 0;) {
      double shift = 0.0;
      const double center = level_center(i, shift);
      ell[i] = std::round(center);
      const double diff = (c[i] - ell[i]) * r(i, i) + shift;
      babai += diff * diff;
    }
    best = std::min(best, babai * (1.0 + 1e-12) + 1e-300);
    std::function<void(std::size_t, double)> descend = [&](std::size_t i, double partial) {
      double shift = 0.0;
      const double center = level_center(i, shift);
      const double rad = std::sqrt(std::max(best - partial, 0.0)) / r(i, i);
      const long lo = static_cast<long>(std::ceil(center - rad));
      const long hi = static_cast<long>(std::floor(center + rad));
      for (long cand = lo; cand <= hi; ++cand) {
        ell[i] = static_cast<double>(cand);
        const double diff = (c[i] - ell[i]) * r(i, i) + shift;
        const double next = partial + diff * diff;
        if (next > best) continue;
        if (i == 0) {
          best = next;
        } else {
          descend(i - 1, next);
        }
      }
    };
    descend(n - 1, 0.0);
  }
  return std::sqrt(best);
}

double conjugation_consistency(const CrystGroup& g, const RatSubspace& w, double s, const MetricConfig& cfg) {
  require_invariant(g, w);
  const MatD pw = numeric_projector(w, g.gram());
  const OrbitDistance rho(g, scaled_form(pw, g.gram(), s), cfg.enum_radius, cfg.tol);
  double worst = 0.0;
  for (const auto& [x, y] : sample_pairs(g.dim(), cfg.pair_count, cfg.seed))
    worst = std::max(worst, std::fabs(rho(x, y) - conjugated_distance(g, pw, s, x, y)));
  return worst;
}

std::string metric_csv(const MetricReport& report) {
  std::ostringstream os;
  os << "s,d_s,max_chain_violation,max_approx_defect\n";
  char buf[128];
  for (const auto& r : report.records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.s, r.d_s, r.max_chain_violation,
                  r.max_approx_defect);
    os << buf;
  }
  return os.str();
}

}  // namespace flatcollapse
