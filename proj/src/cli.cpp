#include "flatcollapse/cli.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "flatcollapse/collapse.hpp"
#include "flatcollapse/foliation.hpp"
#include "flatcollapse/metric.hpp"
#include "flatcollapse/representation.hpp"

namespace flatcollapse {

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::kInvalidArgument, "digest computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

struct Options {
  std::string group_path;
  std::string subspace_path;
  std::string out_path;
  std::string point;
  int budget = kDefaultProbeBudget;
  std::string s_values = "1,0.5,0.25,0.125,0.0625";
  int pairs = 64;
  double radius = 4.0;
  double tol = 1e-6;
  std::uint64_t seed = 7;
  std::string csv_path;
};

// Reads input files and accumulates everything that identifies the run.
class Inputs {
 public:
  explicit Inputs(const std::vector<std::string>& args) {
    for (const auto& a : args) {
      material_ += a;
      material_.push_back('\0');
    }
  }

  Json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    material_ += text;
    material_.push_back('\0');
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, path + ": " + e.what());
    }
  }

  std::string digest() const { return sha256_hex(material_); }

 private:
  std::string material_;
};

Json element_json(const CrystGroup& g, std::size_t i) {
  return Json{{"matrix", to_json(g.element(i))}, {"translation", to_json(g.translation(i))}};
}

const RatSubspace& require_rational(const SubspaceInput& w) {
  if (!w.rational) throw Error(ErrorCode::kIrrationalInput, "this command needs a rational subspace");
  return *w.rational;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad number in list: " + part);
    }
  }
  return out;
}

Json run_validate(const CrystGroup& g) {
  Json vs = Json::array();
  for (std::size_t i = 0; i < g.order(); ++i) vs.push_back(element_json(g, i));
  return Json{{"valid", true}, {"dim", g.dim()}, {"point_group_order", g.order()}, {"vector_system", vs}};
}

Json run_torsion(const CrystGroup& g) {
  const TorsionVerdict v = is_torsion_free(g);
  Json j{{"torsion_free", v.torsion_free}};
  if (v.witness) {
    j["witness"] = Json{{"element", element_json(g, v.witness->element)},
                        {"lattice_shift", to_json(v.witness->lattice_shift)},
                        {"fixed_point", to_json(v.witness->fixed_point)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json run_closure(const CrystGroup& g, const SubspaceInput& w) {
  const ClosureResult c = l_closure(w.algebraic, g.gram());
  return Json{{"input_dim", w.algebraic.dim()},
              {"closure", to_json(c.closure)},
              {"closure_dim", c.closure.dim()},
              {"rational_part", to_json(c.rational_part)},
              {"k_dim", c.k_part.dim()},
              {"closure_lattice", to_json(c.w_lattice)}};
}

Json run_collapse(const CrystGroup& g, const SubspaceInput& w, const std::string& out_path) {
  const CollapsedGroup cg = w.rational ? collapse(g, *w.rational) : collapse(g, w.algebraic);
  const CollapsedInvariants inv = collapsed_invariants(cg);
  Json kernel = Json::array();
  for (std::size_t k : cg.kernel_elements) kernel.push_back(to_json(g.element(k)));
  const Json group = group_to_json(cg.group);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + out_path);
    out << group.dump(2) << '\n';
  }
  return Json{{"collapsed", to_json(cg.w)},
              {"complement", to_json(cg.w_perp)},
              {"chart", to_json(cg.chart)},
              {"holonomy_order", inv.holonomy_order},
              {"lattice_index", to_json(inv.lattice_index)},
              {"kernel", kernel},
              {"group", group}};
}

Json run_smoothness(const CrystGroup& g, const SubspaceInput& w) {
  const SmoothnessVerdict v = is_smooth(g, require_rational(w));
  Json j{{"smooth", v.smooth}};
  if (v.witness) {
    j["witness"] = Json{{"element", element_json(g, v.witness->element)},
                        {"lattice_shift", to_json(v.witness->lattice_shift)},
                        {"fixed_point", to_json(v.witness->fixed_point)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json run_leaf(const CrystGroup& g, const SubspaceInput& w, const std::string& point) {
  const RatSubspace& ws = require_rational(w);
  if (point.empty()) throw Error(ErrorCode::kParseError, "leaf needs --point");
  const VecQ u = parse_point(point, g.dim());
  const LeafClass cls = classify_leaf(g, ws, u);
  const LeafData data = leaf_group(g, ws, u);
  Json hol = Json::array();
  for (const auto& h : data.holonomy)
    hol.push_back(Json{{"element", element_json(g, h.element)}, {"shift", to_json(h.shift)}});
  return Json{{"point", to_json(u)},
              {"principal", cls.principal},
              {"vol_sq", to_json(cls.vol_sq)},
              {"principal_vol_sq", to_json(cls.principal_vol_sq)},
              {"covering_index", to_json(cls.covering_index)},
              {"holonomy_order", data.holonomy_order},
              {"holonomy", hol},
              {"leaf_lattice", to_json(data.leaf_lattice)}};
}

Json run_singular_locus(const CrystGroup& g, const SubspaceInput& w) {
  const RatSubspace& ws = require_rational(w);
  const SingularLocus locus = singular_leaf_locus(g, ws);
  Json strata = Json::array();
  for (const auto& s : locus.strata)
    strata.push_back(Json{{"element", element_json(g, s.element)},
                          {"direction", to_json(s.direction)},
                          {"offset", to_json(s.offset)},
                          {"offset_lattice", to_json(s.offset_lattice)}});
  Json j{{"empty", locus.strata.empty()}, {"complete", locus.complete}, {"strata", strata}};
  if (auto reps = exceptional_leaves(g, ws)) {
    Json leaves = Json::array();
    for (const auto& u : *reps) leaves.push_back(to_json(u));
    j["exceptional_leaves"] = leaves;
  } else {
    j["exceptional_leaves"] = nullptr;
  }
  return j;
}

std::string status_name(SequenceStatus s) { return s == SequenceStatus::kCertified ? "certified" : "budget_limited"; }

Json run_isequence(const CrystGroup& g, int budget, int& exit_code) {
  const ISequence seq = i_sequence(g, budget);
  Json comps = Json::array();
  for (const auto& c : seq.components) {
    Json irr = Json::array();
    for (const auto& s : c.irreducibles) irr.push_back(to_json(s.basis()));
    comps.push_back(Json{{"basis", to_json(c.space.basis())},
                         {"irreducible_dim", c.irreducible_dim ? Json(*c.irreducible_dim) : Json(nullptr)},
                         {"multiplicity", c.multiplicity ? Json(*c.multiplicity) : Json(nullptr)},
                         {"certified", c.certified},
                         {"irreducibles", irr}});
  }
  if (seq.status != SequenceStatus::kCertified) exit_code = 2;
  return Json{{"entries", seq.entries},
              {"status", status_name(seq.status)},
              {"unresolved_block_dims", seq.unresolved_block_dims},
              {"components", comps}};
}

Json run_theorem_c(const CrystGroup& g, int budget) {
  const TheoremCWitness w = theorem_c_witnesses(g, budget);
  if (!w.applicable) return Json{{"applicable", false}};
  return Json{{"applicable", true},
              {"first", Json{{"subspace", to_json(w.w1)}, {"predicted", w.predicted1}, {"computed", w.computed1}}},
              {"second", Json{{"subspace", to_json(w.w2)}, {"predicted", w.predicted2}, {"computed", w.computed2}}}};
}

Json run_gh_verify(const CrystGroup& g, const SubspaceInput& w, const Options& opt, int& exit_code) {
  MetricConfig cfg;
  cfg.s_values = parse_doubles(opt.s_values);
  cfg.pair_count = opt.pairs;
  cfg.enum_radius = opt.radius;
  cfg.tol = opt.tol;
  cfg.seed = opt.seed;
  if (cfg.pair_count < 1) throw Error(ErrorCode::kInvalidArgument, "--pairs must be positive");
  const MetricReport rep = w.rational ? verify_collapse_metric(g, *w.rational, cfg) : verify_collapse_metric(g, w.algebraic, cfg);
  if (!opt.csv_path.empty()) {
    std::ofstream out(opt.csv_path);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + opt.csv_path);
    out << metric_csv(rep);
  }
  Json recs = Json::array();
  for (const auto& r : rep.records)
    recs.push_back(Json{{"s", r.s},
                        {"d_s", r.d_s},
                        {"max_chain_violation", r.max_chain_violation},
                        {"max_approx_defect", r.max_approx_defect}});
  if (!rep.pass) exit_code = 1;
  return Json{{"pass", rep.pass}, {"records", recs}};
}

}  // namespace

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kBudgetLimited || code == ErrorCode::kRadiusTooSmall ? 2 : 1;
}

RunReport run_command(const std::vector<std::string>& args) {
  RunReport report;
  Options opt;
  CLI::App app{"Exact and numeric tools for flat orbifolds and collapsing foliations", "flatcollapse"};
  app.require_subcommand(1);

  auto add_group = [&](CLI::App* sub) { sub->add_option("group", opt.group_path, "group JSON file")->required(); };
  auto add_subspace = [&](CLI::App* sub) {
    sub->add_option("--subspace", opt.subspace_path, "subspace JSON file")->required();
  };

  auto* validate = app.add_subcommand("validate", "load and validate a group");
  add_group(validate);
  auto* torsion = app.add_subcommand("torsion", "decide torsion-freeness");
  add_group(torsion);
  auto* closure = app.add_subcommand("closure", "rational closure of a subspace");
  add_group(closure);
  add_subspace(closure);
  auto* collapse_cmd = app.add_subcommand("collapse", "collapsed group on the orthogonal complement");
  add_group(collapse_cmd);
  add_subspace(collapse_cmd);
  collapse_cmd->add_option("--out", opt.out_path, "write the collapsed group file");
  auto* smooth = app.add_subcommand("smoothness", "decide whether the leaf space is a manifold");
  add_group(smooth);
  add_subspace(smooth);
  auto* leaf = app.add_subcommand("leaf", "leaf group and volume through a point");
  add_group(leaf);
  add_subspace(leaf);
  leaf->add_option("--point", opt.point, "comma-separated rational coordinates")->required();
  auto* locus = app.add_subcommand("singular-locus", "strata of exceptional leaves");
  add_group(locus);
  add_subspace(locus);
  auto* iseq = app.add_subcommand("isequence", "i-sequence of the holonomy representation");
  add_group(iseq);
  iseq->add_option("--budget", opt.budget, "coefficient height of splitting probes");
  auto* thc = app.add_subcommand("theorem-c", "two collapses with different i-sequences");
  add_group(thc);
  thc->add_option("--budget", opt.budget, "coefficient height of splitting probes");
  auto* gh = app.add_subcommand("gh-verify", "numeric check of the metric collapse");
  add_group(gh);
  add_subspace(gh);
  gh->add_option("--s", opt.s_values, "comma-separated scales in (0,1]");
  gh->add_option("--pairs", opt.pairs, "sampled point pairs per scale");
  gh->add_option("--radius", opt.radius, "enumeration radius");
  gh->add_option("--tol", opt.tol, "tolerance");
  gh->add_option("--seed", opt.seed, "random seed");
  gh->add_option("--csv", opt.csv_path, "write per-scale CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    report.command = "help";
    report.payload = Json{{"help", app.help()}};
    return report;
  } catch (const CLI::ParseError& e) {
    report.command = args.empty() ? "" : args.front();
    report.payload = Json{{"error", Json{{"code", "ParseError"}, {"message", e.what()}}}};
    report.exit_code = 1;
    return report;
  }

  const CLI::App* sub = app.get_subcommands().front();
  report.command = sub->get_name();
  Inputs inputs(args);
  try {
    const CrystGroup g = load_group(inputs.load(opt.group_path));
    SubspaceInput w;
    if (!opt.subspace_path.empty()) w = load_subspace(inputs.load(opt.subspace_path), g.dim());
    const std::string& c = report.command;
    if (c == "validate") report.payload = run_validate(g);
    else if (c == "torsion") report.payload = run_torsion(g);
    else if (c == "closure") report.payload = run_closure(g, w);
    else if (c == "collapse") report.payload = run_collapse(g, w, opt.out_path);
    else if (c == "smoothness") report.payload = run_smoothness(g, w);
    else if (c == "leaf") report.payload = run_leaf(g, w, opt.point);
    else if (c == "singular-locus") report.payload = run_singular_locus(g, w);
    else if (c == "isequence") report.payload = run_isequence(g, opt.budget, report.exit_code);
    else if (c == "theorem-c") report.payload = run_theorem_c(g, opt.budget);
    else report.payload = run_gh_verify(g, w, opt, report.exit_code);
  } catch (const Error& e) {
    report.payload = Json{{"error", Json{{"code", std::string(error_name(e.code()))}, {"message", e.what()}}}};
    report.exit_code = exit_code_for(e.code());
  }
  report.inputs_digest = inputs.digest();
  return report;
}

Json report_json(const RunReport& report) {
  Json j{{"command", report.command}, {"inputs_digest", report.inputs_digest}};
  for (const auto& [k, v] : report.payload.items()) j[k] = v;
  j["exit_code"] = report.exit_code;
  return j;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const RunReport report = run_command(args);
  if (report.command == "help") {
    out << report.payload["help"].get<std::string>();
    return 0;
  }
  out << report_json(report).dump(2) << '\n';
  if (report.payload.contains("error")) err << report.payload["error"]["message"].get<std::string>() << '\n';
  return report.exit_code;
}

}  // namespace flatcollapse
