#pragma once

// Floating-point checks of the metric collapse: orbit distances under the
// metrics that shrink W by a factor s, torus diameters, the inequality chain
// against the exact collapsed group, and the conjugated-group isometry.

#include <cstdint>
#include <string>
#include <vector>

#include "flatcollapse/collapse.hpp"

namespace flatcollapse {

using VecD = std::vector<double>;
using MatD = Matrix<double>;

MatD to_double(const MatQ& m);
VecD to_double(const VecQ& v);

struct MetricConfig {
  std::vector<double> s_values{1.0, 0.5, 0.25, 0.125, 0.0625};
  int pair_count = 64;
  double enum_radius = 4.0;
  double tol = 1e-6;
  std::uint64_t seed = 7;
};

/// Numeric G-orthogonal projector onto W (rational or embedded algebraic).
MatD numeric_projector(const RatSubspace& w, const GramForm& g);
MatD numeric_projector(const AlgSubspace& w, const GramForm& g);

/// Quadratic form s^2 q_G(P_W z) + q_G(P_{W-perp} z) as a matrix.
MatD scaled_form(const MatD& pw, const GramForm& g, double s);

/// Orbit distance engine: min over point-group elements A and lattice
/// vectors l of |x - (A y + v_A + l)| in the given quadratic form. Lattice
/// vectors are enumerated in the axis-aligned box of the ellipsoid of radius
/// enum_radius + 1; a distance that is not attained within enum_radius
/// raises RadiusTooSmall.
class OrbitDistance {
 public:
  OrbitDistance(const CrystGroup& g, MatD form, double radius, double tol);
  double operator()(const VecD& x, const VecD& y) const;
  std::size_t dim() const { return form_.rows(); }

 private:
  MatD form_;
  std::vector<MatD> mats_;
  std::vector<VecD> trans_;
  VecD box_;
  double radius_;
  double tol_;
};

double flat_distance(const CrystGroup& g, const MatD& pw, double s, const VecD& x, const VecD& y,
                     const MetricConfig& cfg);

/// Lower estimate of the diameter of closure/(Z^n cap closure) under the
/// metric that scales W by s: grid maximum of the distance to the lattice,
/// refined until stable within tol and polished by pattern search.
double diameter_s(const RatSubspace& closure, const MatD& pw, const GramForm& g, double s,
                  const MetricConfig& cfg);

struct MetricRecord {
  double s = 1.0;
  double d_s = 0.0;
  double max_chain_violation = 0.0;
  double max_approx_defect = 0.0;
};

struct MetricReport {
  std::vector<MetricRecord> records;
  bool pass = true;
};

MetricReport verify_collapse_metric(const CrystGroup& g, const RatSubspace& w, const MetricConfig& cfg);
MetricReport verify_collapse_metric(const CrystGroup& g, const AlgSubspace& w, const MetricConfig& cfg);

/// Max over sampled pairs of the difference between the scaled distance on
/// the group and the standard distance on the conjugated group with lattice
/// A_s(Z^n), A_s = s P_W + P_{W-perp}. The second distance uses an
/// independent recursive enumeration.
double conjugation_consistency(const CrystGroup& g, const RatSubspace& w, double s, const MetricConfig& cfg);

/// Distance in the conjugated group, computed by recursive enumeration.
double conjugated_distance(const CrystGroup& g, const MatD& pw, double s, const VecD& x, const VecD& y);

std::string metric_csv(const MetricReport& report);

}  // namespace flatcollapse
