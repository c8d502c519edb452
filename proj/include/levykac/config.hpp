#pragma once

// Run configuration: UTF-8 key-value file with nested sections ([section]
// headers or dotted keys). Parsing round-trips byte-identically through
// serialize(), and the canonical serialization is what gets hashed into run
// manifests and output files.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "levykac/classify.hpp"
#include "levykac/errors.hpp"
#include "levykac/models.hpp"

namespace levykac {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace detail

// flat key -> value map with dotted keys; sections become prefixes
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text) {
    KeyValueFile kv;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      const std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = detail::trim(t.substr(1, t.size() - 2));
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw parameter_error("config line " + std::to_string(lineno) +
                              ": expected key = value");
      std::string key = detail::trim(t.substr(0, eq));
      const std::string value = detail::trim(t.substr(eq + 1));
      if (!section.empty()) key = section + "." + key;
      kv.values_[key] = value;
    }
    return kv;
  }

  static KeyValueFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key, const std::string& dflt) const {
    auto it = values_.find(key);
    return it == values_.end() ? dflt : it->second;
  }

  double get_double(const std::string& key, double dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw parameter_error("config: bad number for " + key + ": " + it->second);
    }
  }

  long long get_int(const std::string& key, long long dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw parameter_error("config: bad integer for " + key + ": " + it->second);
    }
  }

  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& dflt) const {
    auto it = values_.find(key);
    if (it == values_.end()) return dflt;
    std::vector<double> out;
    for (const auto& piece : detail::split(it->second, ','))
      if (!piece.empty()) out.push_back(std::stod(piece));
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

struct RunConfig {
  LevyModel model;
  Potential potential;
  // grid
  int grid_n = 4096;
  double grid_l = 40.0;
  // solver
  int solver_k = 8;
  double solver_tol = 1e-9;
  // verify
  double window_lo = 5.0;
  double window_hi = 15.0;
  double spread_bound = 50.0;
  // classify
  std::vector<double> times = {0.25, 0.5, 1.0, 2.0};
  std::vector<double> t0_probes = {0.5, 1.0, 2.0, 4.0};
  std::vector<double> annuli_edges = {3, 5, 9, 17, 33};
  double sample_lo = 2.0, sample_hi = 1000.0;
  int sample_n = 64;
  // mc
  std::size_t mc_paths = 100000;
  double mc_dt = 1e-3;
  double mc_horizon = 1.0;
  std::vector<double> mc_x = {0.0};
  double mc_ball_center = 0.0;
  double mc_ball_radius = 1.0;
  // run
  std::string out_dir = "runs/out";
  std::uint64_t seed = 1;
  int threads = 0;

  static RunConfig from_kv(const KeyValueFile& kv) {
    RunConfig c;
    const std::string fam = kv.get_string("family", "stable");
    LevyModel& md = c.model;
    if (fam == "stable") md.family = Family::Stable;
    else if (fam == "stable_mixture") md.family = Family::StableMixture;
    else if (fam == "jump_diffusion") md.family = Family::JumpDiffusion;
    else if (fam == "relativistic") md.family = Family::Relativistic;
    else if (fam == "geometric_stable") md.family = Family::GeometricStable;
    else if (fam == "tempered") md.family = Family::TemperedFamily;
    else throw parameter_error("config: unknown family " + fam);
    md.alpha = kv.get_double("alpha", md.alpha);
    md.beta = kv.get_double("beta", md.beta);
    md.m = kv.get_double("m", md.m);
    md.a = kv.get_double("a", md.a);
    md.b = kv.get_double("b", md.b);
    md.delta = kv.get_double("delta", md.delta);
    md.gamma = kv.get_double("gamma", md.gamma);
    md.dim = static_cast<int>(kv.get_int("dim", md.dim));
    md.validate();

    const std::string pf = kv.get_string("potential.family", "power");
    Potential& V = c.potential;
    if (pf == "power") V.family = PotentialFamily::Power;
    else if (pf == "power_log") V.family = PotentialFamily::PowerLog;
    else if (pf == "log") V.family = PotentialFamily::Log;
    else if (pf == "loglog") V.family = PotentialFamily::LogLog;
    else if (pf == "borderline") V.family = PotentialFamily::Borderline;
    else if (pf == "constant") V.family = PotentialFamily::Constant;
    else throw parameter_error("config: unknown potential.family " + pf);
    V.c = kv.get_double("potential.c", V.c);
    V.p = kv.get_double("potential.p", V.p);
    V.q = kv.get_double("potential.q", V.q);
    V.kappa = kv.get_double("potential.kappa", V.kappa);
    V.t0 = kv.get_double("potential.t0", V.t0);
    V.R = kv.get_double("potential.R", V.R);
    V.offset = kv.get_double("potential.offset", V.offset);
    if (V.family == PotentialFamily::Borderline)
      c.potential = borderline_potential(md, V.t0, V.R);
    else
      V.validate();

    c.grid_n = static_cast<int>(kv.get_int("grid.N", c.grid_n));
    c.grid_l = kv.get_double("grid.L", c.grid_l);
    c.solver_k = static_cast<int>(kv.get_int("solver.k", c.solver_k));
    c.solver_tol = kv.get_double("solver.tol", c.solver_tol);
    c.window_lo = kv.get_double("verify.window_lo", c.window_lo);
    c.window_hi = kv.get_double("verify.window_hi", c.window_hi);
    c.spread_bound = kv.get_double("verify.spread_bound", c.spread_bound);
    c.times = kv.get_list("classify.times", c.times);
    c.t0_probes = kv.get_list("classify.t0_probes", c.t0_probes);
    c.annuli_edges = kv.get_list("classify.annuli", c.annuli_edges);
    c.sample_lo = kv.get_double("classify.sample_lo", c.sample_lo);
    c.sample_hi = kv.get_double("classify.sample_hi", c.sample_hi);
    c.sample_n = static_cast<int>(kv.get_int("classify.sample_n", c.sample_n));
    c.mc_paths = static_cast<std::size_t>(kv.get_int("mc.n_paths", static_cast<long long>(c.mc_paths)));
    c.mc_dt = kv.get_double("mc.dt", c.mc_dt);
    c.mc_horizon = kv.get_double("mc.horizon", c.mc_horizon);
    c.mc_x = kv.get_list("mc.x", c.mc_x);
    c.mc_ball_center = kv.get_double("mc.ball_center", c.mc_ball_center);
    c.mc_ball_radius = kv.get_double("mc.ball_radius", c.mc_ball_radius);
    c.out_dir = kv.get_string("run.out", c.out_dir);
    c.seed = static_cast<std::uint64_t>(kv.get_int("run.seed", static_cast<long long>(c.seed)));
    c.threads = static_cast<int>(kv.get_int("run.threads", c.threads));

    Grid(md.dim, c.grid_l, c.grid_n);  // validates
    if (c.solver_k < 1 || c.solver_k > 32)
      throw parameter_error("config: solver.k in [1, 32]");
    if (!(c.solver_tol > 0)) throw parameter_error("config: solver.tol > 0");
    if (!(c.window_lo > 0 && c.window_hi > c.window_lo))
      throw parameter_error("config: verify window must satisfy 0 < lo < hi");
    return c;
  }

  static RunConfig from_file(const std::string& path) {
    return from_kv(KeyValueFile::parse_file(path));
  }

  std::vector<classify::Annulus> annuli() const {
    std::vector<classify::Annulus> out;
    for (std::size_t i = 0; i + 1 < annuli_edges.size(); ++i)
      out.push_back({annuli_edges[i], annuli_edges[i + 1]});
    return out;
  }

  std::string serialize() const { return serialize_impl(false); }

  // FNV-1a over the canonical serialization; output directory and worker
  // count are execution details, not part of the experiment's identity
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_impl(true)) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::string serialize_impl(bool canonical) const {
    using detail::fmt_double;
    std::ostringstream os;
    auto list = [](const std::vector<double>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + detail::fmt_double(v[i]);
      return s;
    };
    os << "family = " << family_name(model.family) << "\n";
    os << "alpha = " << fmt_double(model.alpha) << "\n";
    os << "beta = " << fmt_double(model.beta) << "\n";
    os << "m = " << fmt_double(model.m) << "\n";
    os << "a = " << fmt_double(model.a) << "\n";
    os << "b = " << fmt_double(model.b) << "\n";
    os << "delta = " << fmt_double(model.delta) << "\n";
    os << "gamma = " << fmt_double(model.gamma) << "\n";
    os << "dim = " << model.dim << "\n\n";
    os << "[potential]\n";
    os << "family = " << potential_family_name(potential.family) << "\n";
    os << "c = " << fmt_double(potential.c) << "\n";
    os << "p = " << fmt_double(potential.p) << "\n";
    os << "q = " << fmt_double(potential.q) << "\n";
    os << "kappa = " << fmt_double(potential.kappa) << "\n";
    os << "t0 = " << fmt_double(potential.t0) << "\n";
    os << "R = " << fmt_double(potential.R) << "\n";
    os << "offset = " << fmt_double(potential.offset) << "\n\n";
    os << "[grid]\n";
    os << "N = " << grid_n << "\n";
    os << "L = " << fmt_double(grid_l) << "\n\n";
    os << "[solver]\n";
    os << "k = " << solver_k << "\n";
    os << "tol = " << fmt_double(solver_tol) << "\n\n";
    os << "[verify]\n";
    os << "window_lo = " << fmt_double(window_lo) << "\n";
    os << "window_hi = " << fmt_double(window_hi) << "\n";
    os << "spread_bound = " << fmt_double(spread_bound) << "\n\n";
    os << "[classify]\n";
    os << "times = " << list(times) << "\n";
    os << "t0_probes = " << list(t0_probes) << "\n";
    os << "annuli = " << list(annuli_edges) << "\n";
    os << "sample_lo = " << fmt_double(sample_lo) << "\n";
    os << "sample_hi = " << fmt_double(sample_hi) << "\n";
    os << "sample_n = " << sample_n << "\n\n";
    os << "[mc]\n";
    os << "n_paths = " << mc_paths << "\n";
    os << "dt = " << fmt_double(mc_dt) << "\n";
    os << "horizon = " << fmt_double(mc_horizon) << "\n";
    os << "x = " << list(mc_x) << "\n";
    os << "ball_center = " << fmt_double(mc_ball_center) << "\n";
    os << "ball_radius = " << fmt_double(mc_ball_radius) << "\n\n";
    os << "[run]\n";
    os << "out = " << (canonical ? std::string(".") : out_dir) << "\n";
    os << "seed = " << seed << "\n";
    os << "threads = " << (canonical ? 0 : threads) << "\n";
    return os.str();
  }
};

}  // namespace levykac
