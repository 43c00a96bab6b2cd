#include "flatcollapse/io.hpp"

#include <fstream>
#include <sstream>

namespace flatcollapse {

namespace {

Rat rat_from(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  throw Error(ErrorCode::kParseError, "expected a rational string or integer, got " + j.dump());
}

Int int_from(const Json& j) {
  const Rat r = rat_from(j);
  if (!is_integer(r)) throw Error(ErrorCode::kParseError, "expected an integer, got " + j.dump());
  return r.get_num();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::kParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const Json& array_of(const Json& j, std::size_t size, const char* what) {
  if (!j.is_array() || (size != SIZE_MAX && j.size() != size))
    throw Error(ErrorCode::kParseError, std::string("malformed ") + what);
  return j;
}

VecQ rat_vector(const Json& j, std::size_t n, const char* what) {
  VecQ v;
  for (const auto& x : array_of(j, n, what)) v.push_back(rat_from(x));
  return v;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

CrystGroup load_group(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 0) throw Error(ErrorCode::kParseError, "dim must be a non-negative integer");
  const auto n = static_cast<std::size_t>(dim.get<long long>());
  MatQ gram(n, n);
  const Json& rows = array_of(field(j, "gram"), n, "gram");
  for (std::size_t i = 0; i < n; ++i) gram.set_row(i, rat_vector(rows[i], n, "gram row"));
  std::vector<Generator> gens;
  for (const auto& gj : array_of(field(j, "generators"), SIZE_MAX, "generators")) {
    Generator gen;
    gen.matrix = MatZ(n, n);
    const Json& m = array_of(field(gj, "matrix"), n, "generator matrix");
    for (std::size_t i = 0; i < n; ++i) {
      array_of(m[i], n, "generator matrix row");
      for (std::size_t k = 0; k < n; ++k) gen.matrix(i, k) = int_from(m[i][k]);
    }
    gen.translation = rat_vector(field(gj, "translation"), n, "translation");
    gens.push_back(std::move(gen));
  }
  return CrystGroup::from_generators(GramForm(gram), gens);
}

Json group_to_json(const CrystGroup& g) {
  Json j;
  j["dim"] = g.dim();
  j["gram"] = to_json(g.gram().matrix());
  Json gens = Json::array();
  for (const auto& gen : g.generators()) gens.push_back({{"matrix", to_json(gen.matrix)}, {"translation", to_json(gen.translation)}});
  j["generators"] = gens;
  return j;
}

SubspaceInput load_subspace(const Json& j, std::size_t ambient) {
  SubspaceInput out;
  if (j.is_object() && j.contains("minpoly")) {
    std::vector<Rat> coeffs;
    for (const auto& c : array_of(j.at("minpoly"), SIZE_MAX, "minpoly")) coeffs.push_back(Rat(int_from(c)));
    const Json& iv = array_of(field(j, "root_interval"), 2, "root_interval");
    auto nf = std::make_shared<const NumberField>(Poly(coeffs), rat_from(iv[0]), rat_from(iv[1]));
    const int d = nf->degree();
    std::vector<VecNF> vecs;
    for (const auto& row : array_of(field(j, "basis_nf"), SIZE_MAX, "basis_nf")) {
      VecNF v;
      for (const auto& entry : array_of(row, ambient, "basis_nf row")) {
        if (entry.is_array()) {
          if (entry.size() > static_cast<std::size_t>(d)) throw Error(ErrorCode::kParseError, "too many field coefficients");
          v.emplace_back(nf, rat_vector(entry, entry.size(), "field element"));
        } else {
          v.push_back(NFElem::rational(nf, rat_from(entry)));
        }
      }
      vecs.push_back(std::move(v));
    }
    out.algebraic = AlgSubspace::from_spanning(nf, ambient, vecs);
    out.rational = out.algebraic.as_rational();
    return out;
  }
  std::vector<VecQ> vecs;
  for (const auto& row : array_of(field(j, "basis"), SIZE_MAX, "basis")) vecs.push_back(rat_vector(row, ambient, "basis row"));
  out.rational = RatSubspace::from_spanning(ambient, vecs);
  out.algebraic = AlgSubspace::from_rational(NumberField::rationals(), *out.rational);
  return out;
}

VecQ parse_point(const std::string& text, std::size_t ambient) {
  VecQ v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_rat(part));
  if (v.size() != ambient) throw Error(ErrorCode::kParseError, "point has wrong number of coordinates");
  return v;
}

Json to_json(const Rat& r) { return to_string(r); }
Json to_json(const Int& z) { return to_string(z); }

Json to_json(const VecQ& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json to_json(const VecZ& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) {
      a.push_back(x.get_si());
    } else {
      a.push_back(to_string(x));
    }
  }
  return a;
}

Json to_json(const MatQ& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const MatZ& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const RatSubspace& w) { return Json{{"basis", to_json(w.basis())}}; }

Json to_json(const AlgSubspace& w) {
  if (auto r = w.as_rational()) return to_json(*r);
  const auto& nf = *w.field();
  Json j;
  j["minpoly"] = to_json(nf.minpoly().coeffs());
  j["root_interval"] = {to_string(nf.lo()), to_string(nf.hi())};
  Json rows = Json::array();
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < w.ambient(); ++k) row.push_back(to_json(w.basis()(i, k).coefficients()));
    rows.push_back(row);
  }
  j["basis_nf"] = rows;
  return j;
}

Json to_json(const Sublattice& l) {
  Json rows = Json::array();
  for (const auto& b : l.basis()) rows.push_back(to_json(b));
  return rows;
}

}  // namespace flatcollapse
