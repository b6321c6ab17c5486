#pragma once
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "terp/core/expr.hpp"
#include "terp/model/lattice.hpp"
#include "terp/model/validate_top.hpp"

namespace terp {

using json = nlohmann::ordered_json;

// One-parameter degeneration inside a model file.
struct FamilySpec {
  std::string name;
  std::string parameter;                       // the degenerating parameter
  bool to_infinity = false;                    // limit point: 0 or infinity
  std::map<std::string, std::string> substitute;  // other parameters as expressions
  std::map<std::string, std::string> fixed;       // constants for the remaining ones
  std::string extension = "saturate";          // or "generated"
  std::vector<Section<MPoly>> generators;      // empty: use the model lattice
};

struct Model {
  std::string name, description;
  TopPtr top;
  Rational alpha1;
  std::vector<std::string> params;
  std::vector<Section<MPoly>> lattice;
  std::map<std::string, GaussQ> point;  // default parameter values
  std::vector<FamilySpec> families;

  const FamilySpec& family(const std::string& n) const {
    for (auto& f : families)
      if (f.name == n) return f;
    throw InputError("no family named '" + n + "'");
  }
};

namespace io_detail {

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (auto& [k, v] : j.items())
    if (!allowed.count(k)) throw InputError(where + ": unknown key '" + k + "'");
}

inline std::string as_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError(where + ": expected a string or integer");
}

inline const json& req(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing '" + key + "'");
  return j.at(key);
}

inline Matrix<GaussQ> parse_matrix(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw InputError(where + ": expected " + std::to_string(n) + " rows");
  Matrix<GaussQ> m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) throw InputError(where + ": bad row " + std::to_string(r + 1));
    for (int c = 0; c < n; ++c) m(r, c) = parse_scalar(as_text(j[r][c], where));
  }
  return m;
}

inline Section<MPoly> parse_section(const json& j, const TopologicalData& top, const std::vector<std::string>& params,
                                    const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": a section is a list of terms");
  Section<MPoly> s;
  for (auto& t : j) {
    check_keys(t, {"basis", "order", "coeff"}, where);
    int b = req(t, "basis", where).get<int>();
    if (b < 1 || b > top.mu) throw InputError(where + ": basis index out of range");
    Rational o = parse_rational(as_text(req(t, "order", where), where));
    if (!top.order_allowed(b - 1, o))
      throw InputError(where + ": order " + o.get_str() + " not congruent to the exponent of A" + std::to_string(b));
    MPoly c = t.contains("coeff") ? parse_expr(as_text(t["coeff"], where), params) : MPoly(1);
    s.add(Slot{o, b - 1}, c);
  }
  return s;
}

inline std::vector<Section<MPoly>> parse_sections(const json& j, const TopologicalData& top,
                                                  const std::vector<std::string>& params, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of sections");
  std::vector<Section<MPoly>> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(parse_section(j[k], top, params, where + "[" + std::to_string(k + 1) + "]"));
  return out;
}

}  // namespace io_detail

inline Model parse_model(const json& j) {
  using namespace io_detail;
  check_keys(j, {"name", "description", "mu", "w", "exponents", "nilpotent", "conjugation", "pairing", "S",
                 "monodromy_log", "alpha1", "parameters", "lattice", "point", "families"},
             "model");
  Model m;
  m.name = j.value("name", "");
  m.description = j.value("description", "");
  auto top = std::make_shared<TopologicalData>();
  top->mu = req(j, "mu", "model").get<int>();
  top->w = req(j, "w", "model").get<int>();
  const int mu = top->mu;
  if (mu <= 0) throw InputError("mu must be positive");
  const json& ex = req(j, "exponents", "model");
  if (!ex.is_array() || static_cast<int>(ex.size()) != mu) throw InputError("exponents: expected mu entries");
  for (auto& e : ex) top->exponents.push_back(parse_rational(as_text(e, "exponents")));
  top->nilpotent = j.contains("nilpotent") ? parse_matrix(j["nilpotent"], mu, "nilpotent") : Matrix<GaussQ>(mu, mu);
  top->conjugation = parse_matrix(req(j, "conjugation", "model"), mu, "conjugation");
  top->pairing = Matrix<GaussQ>(mu, mu);
  top->pairing_exponent.assign(mu, std::vector<Rational>(mu, Rational(0)));
  for (auto& e : req(j, "pairing", "model")) {
    check_keys(e, {"i", "j", "coeff", "exponent"}, "pairing entry");
    int a = req(e, "i", "pairing").get<int>(), b = req(e, "j", "pairing").get<int>();
    if (a < 1 || a > mu || b < 1 || b > mu) throw InputError("pairing: index out of range");
    top->pairing(a - 1, b - 1) = parse_scalar(as_text(req(e, "coeff", "pairing"), "pairing"));
    top->pairing_exponent[a - 1][b - 1] = parse_rational(as_text(req(e, "exponent", "pairing"), "pairing"));
  }
  if (j.contains("S")) { top->S = parse_matrix(j["S"], mu, "S"); top->has_S = true; }
  if (j.contains("monodromy_log")) {
    top->monodromy_log = parse_matrix(j["monodromy_log"], mu, "monodromy_log");
    top->has_monodromy_log = true;
  }
  m.top = top;
  m.alpha1 = parse_rational(as_text(req(j, "alpha1", "model"), "alpha1"));
  make_window(*top, m.alpha1);
  if (j.contains("parameters"))
    for (auto& p : j["parameters"]) {
      std::string s = p.get<std::string>();
      if (s == "i" || s.empty()) throw InputError("invalid parameter name '" + s + "'");
      m.params.push_back(s);
    }
  m.lattice = parse_sections(req(j, "lattice", "model"), *top, m.params, "lattice");
  if (m.lattice.empty()) throw InputError("lattice: no generators");
  if (j.contains("point"))
    for (auto& [k, v] : j["point"].items()) {
      if (std::find(m.params.begin(), m.params.end(), k) == m.params.end())
        throw InputError("point: unknown parameter '" + k + "'");
      m.point[k] = parse_scalar(as_text(v, "point"));
    }
  if (j.contains("families"))
    for (auto& f : j["families"]) {
      check_keys(f, {"name", "parameter", "direction", "substitute", "fixed", "extension", "generators"}, "family");
      FamilySpec fs;
      fs.name = req(f, "name", "family").get<std::string>();
      fs.parameter = req(f, "parameter", "family").get<std::string>();
      if (std::find(m.params.begin(), m.params.end(), fs.parameter) == m.params.end())
        throw InputError("family " + fs.name + ": unknown parameter '" + fs.parameter + "'");
      std::string d = f.value("direction", "0");
      if (d == "infinity" || d == "inf") fs.to_infinity = true;
      else if (d != "0") throw InputError("family " + fs.name + ": direction must be \"0\" or \"infinity\"");
      if (f.contains("substitute"))
        for (auto& [k, v] : f["substitute"].items()) fs.substitute[k] = v.get<std::string>();
      if (f.contains("fixed"))
        for (auto& [k, v] : f["fixed"].items()) fs.fixed[k] = as_text(v, "fixed");
      fs.extension = f.value("extension", "saturate");
      if (fs.extension != "saturate" && fs.extension != "generated")
        throw InputError("family " + fs.name + ": extension must be saturate or generated");
      if (f.contains("generators")) fs.generators = parse_sections(f["generators"], *top, m.params, "family generators");
      m.families.push_back(std::move(fs));
    }
  return m;
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_model(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad model: ") + e.what());
  }
}

inline std::vector<GaussQ> resolve_point(const Model& m, const std::map<std::string, GaussQ>& overrides) {
  std::vector<GaussQ> vals;
  for (auto& p : m.params) {
    auto it = overrides.find(p);
    if (it != overrides.end()) { vals.push_back(it->second); continue; }
    auto d = m.point.find(p);
    if (d == m.point.end()) throw InputError("no value for parameter '" + p + "' (use --point " + p + "=...)");
    vals.push_back(d->second);
  }
  for (auto& [k, v] : overrides)
    if (std::find(m.params.begin(), m.params.end(), k) == m.params.end())
      throw InputError("unknown parameter '" + k + "'");
  return vals;
}

template <class F>
std::vector<Section<F>> evaluate_sections(const std::vector<Section<MPoly>>& secs, const std::vector<F>& vals) {
  std::vector<Section<F>> out;
  for (auto& s : secs) out.push_back(s.transform([&](const MPoly& p) { return p.eval(vals); }));
  return out;
}

template <class F>
Lattice<F> instantiate(const Model& m, const std::vector<F>& vals) {
  return make_lattice<F>(m.top, m.alpha1, evaluate_sections(m.lattice, vals));
}

inline Lattice<GaussQ> instantiate(const Model& m, const std::map<std::string, GaussQ>& point = {}) {
  return instantiate<GaussQ>(m, resolve_point(m, point));
}

}  // namespace terp
