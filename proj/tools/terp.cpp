// terp: command-line front end for the TERP library.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "terp/terp.hpp"

using namespace terp;

namespace {

struct Options {
  std::string cmd;
  std::string model_path;
  bool as_json = false;
  std::string mode = "exact";
  double eps = 1e-9;
  std::vector<std::string> points;
  std::vector<std::string> grids;
  std::string out;
  std::string family;
};

struct Ctx {
  const Options& o;
  Model m;
  std::vector<GaussQ> vals;
  Tol tol;
  bool exact() const { return o.mode == "exact"; }
};

json header(const Ctx& c) {
  json j;
  j["command"] = c.o.cmd;
  j["model"] = c.m.name;
  j["mode"] = c.o.mode;
  j["point"] = point_json(c.m, c.vals);
  return j;
}

std::string text_header(const Ctx& c) {
  std::string s = "model: " + c.m.name + "\n";
  if (!c.m.params.empty()) s += "point: " + point_text(c.m, c.vals) + "\n";
  return s;
}

void emit(const Ctx& c, const json& j, const std::string& text) {
  if (c.o.as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

void require_exact(const Ctx& c) {
  if (!c.exact()) throw InputError("'" + c.o.cmd + "' is only available in exact mode");
}

template <class F>
Lattice<F> lattice_at(const Ctx& c) {
  std::vector<F> fv;
  for (auto& v : c.vals) fv.push_back(field_cast<F>(v));
  return instantiate<F>(c.m, fv);
}

// Valid, canonical lattice at the chosen point; invalid input is a mathematical failure.
template <class F>
Lattice<F> valid_lattice(const Ctx& c) {
  return canonicalize_lattice(lattice_at<F>(c), c.tol);
}

template <class F>
int cmd_validate(const Ctx& c) {
  auto top = validate_topological_data(*c.m.top);
  ValidationReport lat;
  if (top.ok()) lat = validate_lattice(lattice_at<F>(c), c.tol);
  bool ok = top.ok() && lat.ok();
  json j = header(c);
  j["valid"] = ok;
  j["topological_data"] = checks_json(top);
  j["lattice"] = checks_json(lat);
  std::string t = text_header(c) + "topological data:\n" + checks_text(top);
  if (top.ok()) t += "lattice:\n" + checks_text(lat);
  t += ok ? "VALID\n" : "INVALID: " + failed_checks(top.ok() ? lat : top) + "\n";
  emit(c, j, t);
  return ok ? 0 : 1;
}

int cmd_spectrum(const Ctx& c) {
  require_exact(c);
  auto sp = spectral_numbers(valid_lattice<GaussQ>(c), c.tol);
  json j = header(c);
  j["spectrum"] = json::array();
  for (auto& a : sp) j["spectrum"].push_back(a.get_str());
  emit(c, j, text_header(c) + "spectrum: " + rationals_str(sp) + "\n");
  return 0;
}

int cmd_pairs(const Ctx& c) {
  require_exact(c);
  auto pr = spectral_pairs(analyze(valid_lattice<GaussQ>(c), c.tol));
  json j = header(c);
  j["pairs"] = json::array();
  for (auto& [a, l] : pr) j["pairs"].push_back({a.get_str(), l});
  emit(c, j, text_header(c) + "spectral pairs: " + pairs_str(pr) + "\n");
  return 0;
}

int cmd_hodge(const Ctx& c) {
  require_exact(c);
  auto H = hodge_filtration(analyze(valid_lattice<GaussQ>(c), c.tol));
  json j = header(c);
  j["hodge"] = hodge_json(H);
  std::string t = text_header(c) + "Hodge filtration (dim F^p):\n" + hodge_text(H);
  int rc = 0;
  const auto& top = *c.m.top;
  if (top.has_S && top.has_monodromy_log) {
    auto P = pmhs_check(top, H, c.tol);
    j["pmhs"] = {{"polarized", P.ok()}, {"caveat", P.caveat}, {"checks", checks_json(P)}};
    t += "polarized mixed Hodge structure: " + std::string(P.ok() ? "yes" : "no") + " (" + P.caveat + ")\n" +
         checks_text(P);
  }
  emit(c, j, t);
  return rc;
}

template <class F>
int cmd_twistor(const Ctx& c) {
  auto L = valid_lattice<F>(c);
  auto R = classify(L, c.tol);
  json j = header(c);
  j["twistor"] = twistor_json(R);
  std::string t = text_header(c) + twistor_text(R);
  if constexpr (std::is_same_v<F, GaussQ>) {
    if (c.m.top->has_monodromy_log) {
      auto P = pmts_check(L, c.m.top->monodromy_log, c.tol);
      j["pmts"] = pmts_json(P);
      t += pmts_text(P);
    }
  }
  emit(c, j, t);
  return 0;
}

int cmd_scan(const Ctx& c) {
  if (c.o.grids.empty()) throw InputError("scan needs at least one --grid");
  std::vector<GridAxis> axes;
  for (auto& g : c.o.grids) axes.push_back(parse_grid(g));
  std::map<std::string, GaussQ> fixed;
  for (std::size_t k = 0; k < c.m.params.size(); ++k) fixed[c.m.params[k]] = c.vals[k];
  auto rows = c.exact() ? signature_scan<GaussQ>(c.m, axes, fixed, c.tol) : signature_scan<Approx>(c.m, axes, fixed, c.tol);
  std::string csv = scan_csv(axes, rows, c.exact());
  if (!c.o.out.empty()) {
    std::ofstream f(c.o.out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + c.o.out + "'");
    f << csv;
  }
  std::size_t bad = 0;
  for (auto& r : rows) bad += r.status != "ok";
  json j = header(c);
  j["rows"] = rows.size();
  j["errors"] = bad;
  if (c.o.out.empty()) j["csv"] = csv;
  else j["out"] = c.o.out;
  if (c.o.as_json) std::cout << j.dump(2) << "\n";
  else if (c.o.out.empty()) std::cout << csv;
  else std::cout << "wrote " << rows.size() << " rows (" << bad << " errors) to " << c.o.out << "\n";
  return 0;
}

int cmd_limit(const Ctx& c) {
  require_exact(c);
  if (c.m.families.empty()) throw InputError("model has no families");
  const auto& fs = c.o.family.empty() ? c.m.families.front() : c.m.family(c.o.family);
  FamilySpec f = fs;
  // --point values freeze the parameters the family leaves open
  for (std::size_t k = 0; k < c.m.params.size(); ++k) {
    const auto& p = c.m.params[k];
    if (p != f.parameter && !f.substitute.count(p) && !f.fixed.count(p)) f.fixed[p] = c.vals[k].str();
  }
  auto R = limit_terp(make_family<GaussQ>(c.m, f), c.tol);
  json j;
  j["command"] = c.o.cmd;
  j["model"] = c.m.name;
  j["family"] = f.name;
  j["parameter"] = f.parameter;
  j["to"] = f.to_infinity ? "infinity" : "0";
  j["limit"] = limit_json(R);
  std::string t = "model: " + c.m.name + "\nfamily: " + f.name + " (" + f.parameter + " -> " +
                  (f.to_infinity ? "infinity" : "0") + ")\n" + limit_text(R);
  emit(c, j, t);
  return R.degenerate ? 1 : 0;
}

int cmd_strata(const Ctx& c) {
  require_exact(c);
  auto L = valid_lattice<GaussQ>(c);
  auto M = analyze(L, c.tol);
  auto sd = spectral_data(M);
  auto adm = enumerate_admissible_spectra(*c.m.top, L.win);
  auto ch = ansatz_family(L, sd, c.tol);
  json j = header(c);
  json a = json::array();
  for (auto& s : adm) {
    json x = json::array();
    for (auto& v : s) x.push_back(v.get_str());
    a.push_back(x);
  }
  j["admissible_spectra"] = a;
  j["spectrum"] = json::array();
  for (auto& v : sd.numbers) j["spectrum"].push_back(v.get_str());
  j["pairs"] = json::array();
  for (auto& [v, l] : sd.pairs) j["pairs"].push_back({v.get_str(), l});
  j["stratum"] = ansatz_json(ch);
  std::ostringstream t;
  t << text_header(c) << "admissible spectra (" << adm.size() << "):\n";
  for (auto& s : adm) t << "  " << rationals_str(s) << (s == sd.numbers ? "  <- this point" : "") << "\n";
  t << "spectrum: " << rationals_str(sd.numbers) << "\n";
  t << "spectral pairs: " << pairs_str(sd.pairs) << "\n";
  t << ansatz_text(ch);
  emit(c, j, t.str());
  return 0;
}

int run(const Options& o) {
  if (o.mode != "exact" && o.mode != "approx") throw InputError("--mode must be exact or approx");
  if (!(o.eps > 0)) throw InputError("--eps must be positive");
  Ctx c{o, load_model(o.model_path), {}, Tol{o.eps}};
  std::map<std::string, GaussQ> pt;
  for (auto& s : o.points) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--point '" + s + "': expected name=value");
    pt[s.substr(0, eq)] = parse_scalar(s.substr(eq + 1));
  }
  if (o.cmd == "limit" || o.cmd == "scan") {
    // these may leave parameters open; only known names are required
    for (auto& [k, v] : pt)
      if (std::find(c.m.params.begin(), c.m.params.end(), k) == c.m.params.end())
        throw InputError("unknown parameter '" + k + "'");
    for (auto& p : c.m.params) {
      auto it = pt.find(p);
      auto d = c.m.point.find(p);
      c.vals.push_back(it != pt.end() ? it->second : d != c.m.point.end() ? d->second : GaussQ(0));
    }
    if (o.cmd == "scan") {
      std::set<std::string> on_grid;
      for (auto& g : o.grids) on_grid.insert(g.substr(0, g.find('=')));
      for (auto& p : c.m.params)
        if (!on_grid.count(p) && !pt.count(p) && !c.m.point.count(p))
          throw InputError("no value for parameter '" + p + "' (use --point " + p + "=... or --grid)");
    }
  } else {
    c.vals = resolve_point(c.m, pt);
  }
  if (o.cmd == "validate") return c.exact() ? cmd_validate<GaussQ>(c) : cmd_validate<Approx>(c);
  if (o.cmd == "spectrum") return cmd_spectrum(c);
  if (o.cmd == "pairs") return cmd_pairs(c);
  if (o.cmd == "hodge") return cmd_hodge(c);
  if (o.cmd == "twistor") return c.exact() ? cmd_twistor<GaussQ>(c) : cmd_twistor<Approx>(c);
  if (o.cmd == "scan") return cmd_scan(c);
  if (o.cmd == "limit") return cmd_limit(c);
  if (o.cmd == "strata") return cmd_strata(c);
  throw InputError("unknown command '" + o.cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular singular TERP-structures: validation, spectra, twistor classification, limits"};
  app.require_subcommand(1, 1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"validate", "check the topological data and the lattice at a point"},
      {"spectrum", "spectral numbers"},
      {"pairs", "spectral pairs"},
      {"hodge", "limit Hodge filtration (and polarization test when S and N are given)"},
      {"twistor", "twistor splitting, hermitian form and classification"},
      {"scan", "signature scan over a parameter grid (CSV)"},
      {"limit", "limit TERP-structure of a one-parameter family"},
      {"strata", "admissible spectra and the stratum through a point"}};
  for (auto& [name, help] : cmds) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("model", o.model_path, "model JSON file")->required();
    sc->add_flag("--json", o.as_json, "machine-readable output");
    sc->add_option("--mode", o.mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
    sc->add_option("--eps", o.eps, "rank tolerance in approx mode");
    sc->add_option("--point", o.points, "parameter value name=value (repeatable)");
    if (name == "scan") {
      sc->add_option("--grid", o.grids, "param=start:stop:count[,log] (repeatable)");
      sc->add_option("--out", o.out, "write CSV to this file");
    }
    if (name == "limit") sc->add_option("--family", o.family, "family name (default: first)");
    sc->callback([&o, name] { o.cmd = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "error [" << e.kind << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
