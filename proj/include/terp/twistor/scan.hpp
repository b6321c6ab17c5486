#pragma once
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "terp/io/model.hpp"
#include "terp/twistor/twistor.hpp"

namespace terp {

struct GridAxis {
  std::string param;
  std::vector<GaussQ> values;
};

// "param=start:stop:count[,log]". Linear grids are exact; log grids go through doubles.
inline GridAxis parse_grid(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError("grid '" + spec + "': expected param=start:stop:count[,log]");
  GridAxis ax;
  ax.param = spec.substr(0, eq);
  std::string rest = spec.substr(eq + 1);
  bool logscale = false;
  if (auto c = rest.find(','); c != std::string::npos) {
    if (rest.substr(c + 1) != "log") throw InputError("grid '" + spec + "': unknown option '" + rest.substr(c + 1) + "'");
    logscale = true;
    rest = rest.substr(0, c);
  }
  std::vector<std::string> parts;
  std::stringstream ss(rest);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw InputError("grid '" + spec + "': expected start:stop:count");
  GaussQ a = parse_scalar(parts[0]), b = parse_scalar(parts[1]);
  if (!a.is_real() || !b.is_real()) throw InputError("grid '" + spec + "': endpoints must be real");
  long count = 0;
  try {
    std::size_t used = 0;
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw InputError("grid '" + spec + "': bad count");
  }
  if (count < 1 || count > 100000) throw InputError("grid '" + spec + "': count must be in 1..100000");
  for (long k = 0; k < count; ++k) {
    if (count == 1) { ax.values.push_back(a); continue; }
    if (!logscale) {
      ax.values.push_back(a + (b - a) * GaussQ(make_rational(k, count - 1)));
    } else {
      double x = a.re().get_d(), y = b.re().get_d();
      if (x <= 0 || y <= 0) throw InputError("grid '" + spec + "': log grids need positive endpoints");
      double v = x * std::pow(y / x, double(k) / double(count - 1));
      ax.values.push_back(GaussQ(Rational(v)));
    }
  }
  return ax;
}

struct ScanRow {
  std::vector<GaussQ> values;   // one per axis
  std::vector<int> splitting;
  int p = 0, q = 0, corank = 0;
  bool marginal = false;
  std::string status = "ok";
};

inline std::string format_value(const GaussQ& v, bool exact) {
  if (exact) return v.str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v.re().get_d());
  return buf;
}

template <class F>
ScanRow scan_point(const Model& m, const std::vector<GaussQ>& vals, const Tol& tol) {
  ScanRow row;
  try {
    std::vector<F> fv;
    for (auto& v : vals) fv.push_back(field_cast<F>(v));
    auto L = instantiate<F>(m, fv);
    auto rep = validate_lattice(L, tol);
    if (!rep.ok()) throw MathError("InvalidLattice", failed_checks(rep));
    auto R = classify(L, tol);
    row.splitting = R.splitting;
    row.p = R.sig.pos;
    row.q = R.sig.neg;
    row.corank = R.sig.zero;
    row.marginal = R.marginal;
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

// Grid points in row-major order of the axes; evaluated in parallel, returned in grid order.
template <class F>
std::vector<ScanRow> signature_scan(const Model& m, const std::vector<GridAxis>& axes,
                                    const std::map<std::string, GaussQ>& fixed, const Tol& tol = {},
                                    unsigned threads = 0) {
  for (auto& ax : axes)
    if (std::find(m.params.begin(), m.params.end(), ax.param) == m.params.end())
      throw InputError("grid: unknown parameter '" + ax.param + "'");
  std::size_t total = 1;
  for (auto& ax : axes) total *= ax.values.size();
  // parameter order of the model, with grid values overriding fixed ones
  auto point_at = [&](std::size_t idx, std::vector<GaussQ>& axis_vals) {
    std::map<std::string, GaussQ> pt = fixed;
    axis_vals.assign(axes.size(), GaussQ(0));
    for (std::size_t a = axes.size(); a-- > 0;) {
      std::size_t n = axes[a].values.size();
      axis_vals[a] = axes[a].values[idx % n];
      idx /= n;
      pt[axes[a].param] = axis_vals[a];
    }
    return resolve_point(m, pt);
  };
  std::vector<ScanRow> rows(total);
  std::vector<std::vector<GaussQ>> points(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<GaussQ> av;
    points[k] = point_at(k, av);
    rows[k].values = av;
  }
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < total;) {
      auto r = scan_point<F>(m, points[k], tol);
      r.values = rows[k].values;
      rows[k] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

inline std::string scan_csv(const std::vector<GridAxis>& axes, const std::vector<ScanRow>& rows, bool exact) {
  std::ostringstream os;
  for (auto& ax : axes) os << ax.param << ",";
  os << "splitting,p,q,corank,marginal,status\n";
  for (auto& r : rows) {
    for (auto& v : r.values) os << format_value(v, exact) << ",";
    std::string sp;
    for (std::size_t i = 0; i < r.splitting.size(); ++i) sp += (i ? ";" : "") + std::to_string(r.splitting[i]);
    std::string st = r.status;
    for (auto& c : st)
      if (c == ',' || c == '\n' || c == '"') c = ' ';
    os << sp << "," << r.p << "," << r.q << "," << r.corank << "," << (r.marginal ? 1 : 0) << "," << st << "\n";
  }
  return os.str();
}

}  // namespace terp
