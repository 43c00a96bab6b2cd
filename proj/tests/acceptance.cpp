// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and not configurable.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "flatcollapse/metric.hpp"
#include "flatcollapse/representation.hpp"
#include "oracles.hpp"

using namespace fc_test;

namespace {

constexpr double kMetricTol = 1e-6;
constexpr double kDiameterRatio = 0.1;
constexpr double kConjugationTol = 1e-6;
const std::vector<double> kScales{1.0, 0.5, 0.25, 0.125, 0.0625};

// Collects failed checks for one criterion.
struct Verdict {
  std::vector<std::string> failures;
  std::string summary;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

FieldPtr sqrt2() {
  static FieldPtr f = std::make_shared<const NumberField>(Poly::from_ints({-2, 0, 1}), Rat(1), Rat(2));
  return f;
}

Verdict ac1() {
  Verdict v;
  for (const char* name : {"T2", "KB", "HW"}) {
    const CrystGroup g = fixture(name);
    v.require(is_torsion_free(g).torsion_free, std::string(name) + " not torsion-free");
    v.require(!brute_force_has_fixed_point(g), std::string(name) + " brute-force oracle finds a fixed point");
  }
  const CrystGroup hex = fixture("HEX3");
  const TorsionVerdict t = is_torsion_free(hex);
  v.require(!t.torsion_free && t.witness.has_value(), "HEX3 torsion not reported");
  if (t.witness) {
    VecQ w = hex.translation(t.witness->element);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += Rat(t.witness->lattice_shift[k]);
    v.require(add(mat_vec(hex.element_q(t.witness->element), t.witness->fixed_point), w) == t.witness->fixed_point,
              "HEX3 witness does not fix its point");
  }
  v.require(brute_force_has_fixed_point(hex), "HEX3 brute-force oracle finds no fixed point");
  v.summary = "T2, KB, HW torsion-free; HEX3 witness verified; brute-force oracle agrees";
  return v;
}

Verdict ac2() {
  Verdict v;
  const CrystGroup t2 = fixture("T2");
  const auto line = fixture_subspace("LINE_IRR", 2);
  v.require(l_closure(line.algebraic, t2.gram()).closure == RatSubspace::whole(2), "LINE_IRR closure is not R^2");

  std::mt19937_64 rng(2718);
  int covectors = 0;
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
    const GramForm g = GramForm::identity(n);
    auto rnd = [&](bool rational) {
      VecNF x;
      for (std::size_t i = 0; i < n; ++i)
        x.emplace_back(sqrt2(), std::vector<Rat>{Rat(uniform(rng, -3, 3)), Rat(rational ? 0 : uniform(rng, -3, 3))});
      return x;
    };
    const VecNF a = rnd(uniform(rng, 0, 3) == 0);
    const VecNF b = rnd(false);
    const AlgSubspace w1 = AlgSubspace::from_spanning(sqrt2(), n, {a});
    const AlgSubspace w2 = AlgSubspace::from_spanning(sqrt2(), n, {a, b});
    const RatSubspace c1 = l_closure(w1, g).closure;
    const RatSubspace c2 = l_closure(w2, g).closure;
    v.require(l_closure(AlgSubspace::from_rational(sqrt2(), c1), g).closure == c1, "closure not idempotent");
    v.require(l_closure(AlgSubspace::from_rational(sqrt2(), c2), g).closure == c2, "closure not idempotent");
    v.require(c2.contains(c1), "closure not monotone");
    v.require(AlgSubspace::from_rational(sqrt2(), c2).contains(w2), "closure does not contain W");

    // Rational covectors vanishing on W over the field vanish on the closure.
    MatQ rows;
    for (const auto& x : w2.vectors())
      for (const auto& c : nf_components(x, sqrt2())) rows.append_row(c);
    const MatQ ann = nullspace(rows);
    for (int s = 0; s < 2; ++s) {
      VecQ phi = zero_vector(n);
      for (std::size_t i = 0; i < ann.rows(); ++i) phi = add(phi, scale(ann.row(i), random_rat(rng, 7)));
      for (const auto& x : w2.vectors()) {
        NFElem dot;
        for (std::size_t i = 0; i < n; ++i) dot += NFElem::rational(sqrt2(), phi[i]) * x[i];
        v.require(dot.is_zero(), "sampled covector does not vanish on W");
      }
      for (const auto& x : c2.vectors()) {
        Rat dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += phi[i] * x[i];
        v.require(dot == 0, "covector vanishing on W does not vanish on the closure");
      }
      ++covectors;
    }
  }
  v.summary = "LINE_IRR closure = R^2; 50 random subspaces idempotent/monotone; " + std::to_string(covectors) +
              " covectors minimal";
  return v;
}

Verdict ac3() {
  Verdict v;
  MetricConfig cfg;
  cfg.s_values = kScales;
  cfg.tol = kMetricTol;
  struct Case {
    const char* group;
    RatSubspace w;
    const char* label;
  };
  const std::vector<Case> cases{{"KB", span_of(2, {0}), "KB/e1"}, {"KB", span_of(2, {1}), "KB/e2"}, {"HW", span_of(3, {0}), "HW/e1"}};
  std::ostringstream os;
  for (const auto& c : cases) {
    const MetricReport rep = verify_collapse_metric(fixture(c.group), c.w, cfg);
    double worst = -1e9;
    for (const auto& r : rep.records) worst = std::max({worst, r.max_chain_violation, r.max_approx_defect});
    v.require(rep.pass, std::string(c.label) + " inequality chain violated (worst " + std::to_string(worst) + ")");
    const double ratio = rep.records.back().d_s / rep.records.front().d_s;
    v.require(ratio < kDiameterRatio, std::string(c.label) + " d(1/16)/d(1) = " + std::to_string(ratio));
    os << c.label << " ratio " << ratio << "; ";
  }
  v.summary = os.str() + "tol 1e-6";
  return v;
}

Verdict ac4() {
  Verdict v;
  std::mt19937_64 rng(4242);
  int pairs = 0;
  for (const auto& c : bieberbach_subspaces()) {
    const CrystGroup g = fixture(c.group);
    const bool membership = is_smooth(g, c.w).smooth;
    const bool locus_empty = singular_leaf_locus(g, c.w).strata.empty();
    const bool sampled = leaves_look_smooth(g, c.w, rng, 30);
    v.require(membership == locus_empty && membership == sampled, std::string(c.label) + " predicates disagree");
    ++pairs;
  }
  const CrystGroup kb = fixture("KB");
  v.require(is_smooth(kb, span_of(2, {1})).smooth, "KB/e2 not smooth");
  v.require(!is_smooth(kb, span_of(2, {0})).smooth, "KB/e1 not singular");
  const auto reps = exceptional_leaves(kb, span_of(2, {0}));
  v.require(reps && reps->size() == 2, "KB/e1 does not have exactly two exceptional leaves");
  if (reps && reps->size() == 2) {
    std::vector<Rat> h{frac((*reps)[0][1]), frac((*reps)[1][1])};
    std::sort(h.begin(), h.end());
    v.require(h == std::vector<Rat>{Rat(0), make_rat(1, 2)}, "KB/e1 exceptional leaves not at u2 in {0, 1/2}");
    for (const auto& u : *reps) v.require(classify_leaf(kb, span_of(2, {0}), u).covering_index == 2, "covering index is not 2");
  }
  v.summary = std::to_string(pairs) + " fixture/subspace pairs agree; KB/e1 has leaves at u2 = 0, 1/2 with index 2";
  return v;
}

Verdict ac5() {
  Verdict v;
  const std::vector<std::pair<const char*, std::vector<int>>> expected{{"KB", {1, 1}}, {"HW", {1, 1, 1}}, {"HEX3", {2}}};
  for (const auto& [name, seq] : expected) {
    const ISequence s = i_sequence(fixture(name));
    v.require(s.entries == seq, std::string(name) + " i-sequence " + join(s.entries));
    v.require(s.status == SequenceStatus::kCertified, std::string(name) + " not certified");
  }
  for (const char* name : {"T2", "KB", "HW"}) {
    const CrystGroup g = fixture(name);
    const ISequence s = i_sequence(g);
    int total = 0;
    for (int d : s.entries) total += d;
    v.require(total == static_cast<int>(g.dim()), std::string(name) + " sum differs from n");
    v.require(s.entries.size() >= 2, std::string(name) + " length below 2");
  }
  std::mt19937_64 rng(5150);
  for (const char* name : {"T2", "KB", "HEX3", "HW"}) {
    const CrystGroup g = fixture(name);
    const auto base = i_sequence(g).entries;
    for (int t = 0; t < 10; ++t) {
      const CrystGroup h = change_basis(g, random_unimodular(rng, g.dim()));
      v.require(i_sequence(h).entries == base, std::string(name) + " i-sequence changed under a basis change");
    }
  }
  v.summary = "KB (1,1), HW (1,1,1), HEX3 (2) certified; invariant under 10 basis changes per fixture";
  return v;
}

Verdict ac6() {
  Verdict v;
  const TheoremCWitness hw = theorem_c_witnesses(fixture("HW"));
  v.require(hw.applicable, "HW reported not applicable");
  v.require(hw.computed1 == std::vector<int>{1, 1} && hw.computed2 == std::vector<int>{1},
            "HW collapsed i-sequences " + join(hw.computed1) + " and " + join(hw.computed2));
  v.require(!theorem_c_witnesses(fixture("KB")).applicable, "KB not reported NotApplicable");
  int selections = 0;
  for (const char* name : {"T2", "KB", "HEX3", "HW"}) {
    const CrystGroup g = fixture(name);
    const ISequence seq = i_sequence(g);
    for (const auto& sel : isotypic_selections(g, seq)) {
      const auto computed = i_sequence(collapse(g, sel.space).group).entries;
      v.require(computed == sel.predicted, std::string(name) + " selection predicted " + join(sel.predicted) +
                                               " computed " + join(computed));
      ++selections;
    }
  }
  v.summary = "HW witnesses (1,1) and (1); " + std::to_string(selections) + " selections match; KB NotApplicable";
  return v;
}

Verdict ac7() {
  Verdict v;
  MetricConfig cfg;
  cfg.pair_count = 64;
  double worst = 0.0;
  const std::vector<std::pair<const char*, RatSubspace>> cases{
      {"T2", span_of(2, {0})}, {"KB", span_of(2, {0})}, {"KB", span_of(2, {1})}};
  for (const auto& [name, w] : cases)
    for (double s : {0.5, 0.25}) {
      const double dev = conjugation_consistency(fixture(name), w, s, cfg);
      worst = std::max(worst, dev);
      v.require(dev <= kConjugationTol, std::string(name) + " deviation " + std::to_string(dev));
    }
  std::ostringstream os;
  os << "max deviation " << worst << " over 64 pairs, s in {1/2, 1/4}";
  v.summary = os.str();
  return v;
}

Verdict ac8() {
  Verdict v;
  std::mt19937_64 rng(8080);
  for (int t = 0; t < 500; ++t) {
    const auto r = static_cast<std::size_t>(uniform(rng, 1, 8));
    const auto c = static_cast<std::size_t>(uniform(rng, 1, 8));
    MatZ m = random_matrix(rng, r, c, 20);
    if (t % 5 == 0 && r > 2) m.set_row(r - 1, m.row(0));
    const HermiteForm h = hnf(m);
    const SmithForm s = snf(m);
    v.require(h.u * m == h.h && is_unimodular(h.u) && is_hermite_normal_form(h.h), "HNF round-trip failed");
    v.require(s.u * m * s.v == s.s && is_unimodular(s.u) && is_unimodular(s.v) && is_smith_normal_form(s.s),
              "SNF round-trip failed");
  }
  int queries = 0, members = 0;
  while (queries < 200) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    std::vector<VecQ> gens;
    const long count = uniform(rng, 1, 3);
    for (long i = 0; i < count; ++i) {
      VecQ g;
      for (std::size_t k = 0; k < n; ++k) g.push_back(make_rat(uniform(rng, -3, 3), uniform(rng, 1, 2)));
      gens.push_back(g);
    }
    const Sublattice lat = sublattice_from_generators(n, gens);
    const LatticeBox box(gens, 2, 9);
    for (int k = 0; k < 10; ++k, ++queries) {
      VecQ target;
      if (k % 2 == 0) {
        target = zero_vector(n);
        for (const auto& g : gens) target = add(target, scale(g, Rat(uniform(rng, -2, 2))));
        bool small = true;
        for (const auto& x : target) small = small && abs(x) <= 6;
        if (!small) target = zero_vector(n);
      } else {
        for (std::size_t j = 0; j < n; ++j) target.push_back(make_rat(uniform(rng, -6, 6), uniform(rng, 1, 2)));
      }
      const bool exact = lattice_membership(target, lat).has_value();
      members += exact;
      v.require(exact == box.contains(target), "lattice_membership disagrees with enumeration");
    }
  }
  v.summary = "500 HNF/SNF round-trips; 200 membership queries (" + std::to_string(members) + " members) agree";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 exact validation", ac1},       {"AC2 L-closure", ac2},
      {"AC3 Theorem A cross-check", ac3},  {"AC4 Theorem B equivalence", ac4},
      {"AC5 i-sequences", ac5},            {"AC6 Theorem C and collapsed i-sequences", ac6},
      {"AC7 conjugated-group consistency", ac7}, {"AC8 exactness oracles", ac8}};
  bool all = true;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = v.failures.empty();
    all = all && ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " -- " << (ok ? v.summary : v.failures.front());
    if (v.failures.size() > 1) std::cout << " (+" << v.failures.size() - 1 << " more)";
    std::cout << " [" << std::fixed << std::setprecision(2) << secs << "s]" << std::defaultfloat << '\n';
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "total " << std::fixed << std::setprecision(2) << total << "s\n";
  return all ? 0 : 1;
}
