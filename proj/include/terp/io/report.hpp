#pragma once
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "terp/classifying/ansatz.hpp"
#include "terp/classifying/pmhs.hpp"
#include "terp/io/model.hpp"
#include "terp/limits/limit.hpp"
#include "terp/twistor/pmts.hpp"
#include "terp/twistor/scan.hpp"

namespace terp {

// ---- scalars and sections ----

inline std::string scalar_str(const GaussQ& x) { return x.str(); }

inline std::string scalar_str(const Approx& x) {
  auto fmt = [](double v) {
    if (v == 0) v = 0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  double re = std::abs(x.real()) < 1e-300 ? 0.0 : x.real();
  double im = std::abs(x.imag()) < 1e-300 ? 0.0 : x.imag();
  if (im == 0) return fmt(re);
  std::string s = re == 0 ? "" : fmt(re);
  std::string m = fmt(std::abs(im));
  if (im < 0) return s + "-" + m + "*i";
  return s + (s.empty() ? "" : "+") + m + "*i";
}

template <class F>
std::string section_str(const Section<F>& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (auto& [sl, c] : s.terms()) {
    std::string es = "es(A" + std::to_string(sl.index + 1) + "," + sl.order.get_str() + ")";
    std::string cs = scalar_str(c);
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    std::string t;
    if (cs == "1") t = es;
    else if (cs == "-1") t = "-" + es;
    else t = (compound ? "(" + cs + ")" : cs) + "*" + es;
    if (out.empty()) out = t;
    else if (t[0] == '-') out += " - " + t.substr(1);
    else out += " + " + t;
  }
  return out;
}

inline std::string rationals_str(const std::vector<Rational>& v) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : ", ") + x.get_str();
  return s;
}

inline std::string pairs_str(const std::vector<SpectralPair>& v) {
  std::string s;
  for (auto& [a, l] : v) s += (s.empty() ? "" : ", ") + ("(" + a.get_str() + ", " + std::to_string(l) + ")");
  return s;
}

inline std::string splitting_str(const std::vector<int>& k) {
  std::string s = "[";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "]";
}

// ---- checks ----

inline json checks_json(const ValidationReport& rep) {
  json a = json::array();
  for (auto& c : rep.checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return a;
}

inline std::string checks_text(const ValidationReport& rep, const std::string& indent = "  ") {
  std::string s;
  for (auto& c : rep.checks)
    s += indent + (c.passed ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
  return s;
}

inline json point_json(const Model& m, const std::vector<GaussQ>& vals) {
  json p = json::object();
  for (std::size_t k = 0; k < m.params.size(); ++k) p[m.params[k]] = vals[k].str();
  return p;
}

inline std::string point_text(const Model& m, const std::vector<GaussQ>& vals) {
  std::string s;
  for (std::size_t k = 0; k < m.params.size(); ++k) s += (k ? ", " : "") + m.params[k] + "=" + vals[k].str();
  return s;
}

// ---- twistor ----

template <class F>
json matrix_json(const Matrix<F>& M) {
  json a = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) r.push_back(scalar_str(M(i, j)));
    a.push_back(r);
  }
  return a;
}

template <class F>
json twistor_json(const TwistorReport<F>& R) {
  json j;
  j["splitting"] = R.splitting;
  j["classification"] = R.classification();
  j["pure"] = R.pure;
  j["polarized"] = R.polarized;
  j["signature"] = {{"p", R.sig.pos}, {"q", R.sig.neg}, {"corank", R.sig.zero}};
  json b = json::array();
  for (auto& s : R.h0_basis) b.push_back(section_str(s));
  j["global_sections"] = b;
  j["h"] = matrix_json(R.h);
  j["marginal"] = R.marginal;
  ValidationReport inv;
  inv.checks = R.invariants;
  j["invariants"] = checks_json(inv);
  return j;
}

template <class F>
std::string twistor_text(const TwistorReport<F>& R) {
  std::ostringstream os;
  os << "splitting: " << splitting_str(R.splitting) << "\n";
  os << "classification: " << R.classification() << (R.polarized ? " polarized" : "") << "\n";
  os << "signature: p=" << R.sig.pos << " q=" << R.sig.neg << " corank=" << R.sig.zero << "\n";
  os << "global sections (" << R.h0_basis.size() << "):\n";
  for (auto& s : R.h0_basis) os << "  " << section_str(s) << "\n";
  os << "h:\n";
  for (std::size_t i = 0; i < R.h.rows(); ++i) {
    os << "  [";
    for (std::size_t k = 0; k < R.h.cols(); ++k) os << (k ? ", " : "") << scalar_str(R.h(i, k));
    os << "]\n";
  }
  if (R.marginal) os << "marginal: rank decision within tolerance\n";
  ValidationReport inv;
  inv.checks = R.invariants;
  os << "invariants:\n" << checks_text(inv);
  return os.str();
}

inline json pmts_json(const PmtsReport<GaussQ>& P) {
  json j;
  j["verdict"] = P.verdict;
  j["checks"] = checks_json(P.checks);
  json pieces = json::array();
  for (auto& pc : P.pieces) {
    json x;
    x["l"] = pc.l;
    x["weight"] = pc.top->w;
    x["rank"] = pc.top->mu;
    x["classification"] = pc.report.classification();
    x["polarized"] = pc.report.polarized;
    x["signature"] = {{"p", pc.report.sig.pos}, {"q", pc.report.sig.neg}, {"corank", pc.report.sig.zero}};
    pieces.push_back(x);
  }
  j["pieces"] = pieces;
  return j;
}

inline std::string pmts_text(const PmtsReport<GaussQ>& P) {
  std::ostringstream os;
  os << "polarized mixed twistor: " << (P.verdict ? "yes" : "no") << "\n";
  os << checks_text(P.checks);
  for (auto& pc : P.pieces)
    os << "  piece l=" << pc.l << " weight=" << pc.top->w << " rank=" << pc.top->mu << ": "
       << pc.report.classification() << (pc.report.polarized ? " polarized" : "") << "\n";
  return os.str();
}

// ---- spectra ----

inline json hodge_json(const HodgeFiltration<GaussQ>& H) {
  json dims = json::array();
  for (int p = H.pmax() + 1; p >= H.pmin(); --p) dims.push_back({{"p", p}, {"dim", H.at(p).dim()}});
  return dims;
}

inline std::string hodge_text(const HodgeFiltration<GaussQ>& H) {
  std::string s;
  for (int p = H.pmax() + 1; p >= H.pmin(); --p) s += "F^" + std::to_string(p) + ": " + std::to_string(H.at(p).dim()) + "\n";
  return s;
}

// ---- limits ----

inline json limit_json(const LimitReport& R) {
  json j;
  j["extension"] = R.extension;
  j["degenerate"] = R.degenerate;
  if (R.degenerate) j["diagnosis"] = R.diagnosis;
  j["witness"] = R.witness;
  j["membership"] = R.membership;
  json g = json::array();
  for (auto& s : R.lattice.gens) g.push_back(section_str(s));
  j["generators"] = g;
  j["spectrum"] = json::array();
  for (auto& a : R.spectrum) j["spectrum"].push_back(a.get_str());
  j["saturation_steps"] = R.steps;
  j["checks"] = checks_json(R.checks);
  return j;
}

inline std::string limit_text(const LimitReport& R) {
  std::ostringstream os;
  if (R.degenerate) os << "DEGENERATE: " << R.witness << "\n";
  else os << "limit: TERP-structure (" << R.extension << ")\n";
  os << "generators:\n";
  for (auto& s : R.lattice.gens) os << "  " << section_str(s) << "\n";
  if (!R.degenerate) os << "spectrum: " << rationals_str(R.spectrum) << "\n";
  os << "point: " << R.membership << "\n";
  os << "checks:\n" << checks_text(R.checks);
  return os.str();
}

// ---- strata ----

inline json ansatz_json(const AnsatzChart& ch) {
  json j;
  json fr = json::array(), fo = json::array(), cs = json::array();
  for (auto& v : ch.vars) (v.forced ? fo : fr).push_back(v.name);
  auto names = ch.names();
  for (auto& c : ch.constraints) cs.push_back(c.str(names));
  j["free"] = fr;
  j["forced_zero"] = fo;
  j["constraints"] = cs;
  return j;
}

inline std::string ansatz_text(const AnsatzChart& ch) {
  std::ostringstream os;
  std::string fr, fo;
  for (auto& v : ch.vars) (v.forced ? fo : fr) += ((v.forced ? fo : fr).empty() ? "" : ", ") + v.name;
  os << "chart variables: " << (fr.empty() ? "(none)" : fr) << "\n";
  os << "forced zero: " << (fo.empty() ? "(none)" : fo) << "\n";
  os << "constraints (" << ch.constraints.size() << "):\n";
  auto names = ch.names();
  for (auto& c : ch.constraints) os << "  " << c.str(names) << " = 0\n";
  return os.str();
}

}  // namespace terp
