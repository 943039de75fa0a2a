#include "kuz/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "kuz/errors.hpp"

namespace kuz {

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kSpaceConv: return "space-conv";
    case Experiment::kTimeConv: return "time-conv";
    case Experiment::kInviscid: return "inviscid";
    case Experiment::kPulse: return "pulse";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::kSpaceConv, Experiment::kTimeConv, Experiment::kInviscid,
                       Experiment::kPulse}) {
    if (name == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(name) +
                    "' (expected space-conv, time-conv, inviscid or pulse)");
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::kSpaceConv:
      c.degrees = {1, 2, 3};
      c.betas = {0.0, 1e-3, 1e-2};
      c.nx = {8, 16, 32, 64};
      c.taus = {1.5e-3};
      break;
    case Experiment::kTimeConv:
      c.degrees = {2};
      c.betas = {0.0, 1e-3, 1e-2};
      c.nx = {128};
      c.taus = {8e-3, 4e-3, 2e-3, 1e-3};
      break;
    case Experiment::kInviscid:
      c.degrees = {2};
      c.betas = {1e-1, 1e-2, 1e-3, 1e-4};
      c.nx = {8, 16, 32};
      c.taus = {8e-3, 4e-3, 2e-3};
      c.kappa = 0.3;
      c.c_sp = 0.01;
      c.c_time = 1.0;
      break;
    case Experiment::kPulse:
      c.degrees = {2};
      c.betas = {0.0, 1e-3, 1e-2};
      c.nx = {25, 50};
      c.taus = {0.8 / 32, 0.8 / 64, 0.8 / 128};
      c.kappa = -0.29;
      c.nx_ref = 200;
      c.tau_ref = 0.8 / 1024;
      break;
  }
  c.out = std::string(to_string(e)) + ".csv";
  return c;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number<T>(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw ConfigError("bad boolean '" + s + "' for " + std::string(key));
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class T>
std::string fmt_list(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_integral_v<T>) {
      s += std::to_string(xs[i]);
    } else {
      s += fmt(xs[i]);
    }
  }
  return s;
}

}  // namespace

void apply_setting(ExperimentConfig& c, std::string_view key_in, std::string_view value) {
  const std::string key = trim(key_in);
  if (key == "experiment") {
    c.experiment = parse_experiment(trim(value));
  } else if (key == "degree") {
    c.degrees = parse_list<int>(key, value);
  } else if (key == "beta") {
    c.betas = parse_list<double>(key, value);
  } else if (key == "nx") {
    c.nx = parse_list<int>(key, value);
  } else if (key == "tau") {
    c.taus = parse_list<double>(key, value);
  } else if (key == "t_end") {
    c.t_end = parse_number<double>(key, value);
  } else if (key == "kappa") {
    c.kappa = parse_number<double>(key, value);
  } else if (key == "c2") {
    c.c2 = parse_number<double>(key, value);
  } else if (key == "ell") {
    c.ell = parse_number<double>(key, value);
  } else if (key == "c_sp") {
    c.c_sp = parse_number<double>(key, value);
  } else if (key == "c_time") {
    c.c_time = parse_number<double>(key, value);
  } else if (key == "nx_ref") {
    c.nx_ref = parse_number<int>(key, value);
  } else if (key == "tau_ref") {
    c.tau_ref = parse_number<double>(key, value);
  } else if (key == "out") {
    c.out = trim(value);
  } else if (key == "reproducible") {
    c.reproducible = parse_bool(key, value);
  } else if (key == "solver") {
    const std::string s = trim(value);
    if (s == "direct") {
      c.solver = SolverKind::kDirect;
    } else if (s == "iterative") {
      c.solver = SolverKind::kIterative;
    } else {
      throw ConfigError("solver must be 'direct' or 'iterative'");
    }
  } else if (key == "solver_tol") {
    c.solver_tol = parse_number<double>(key, value);
  } else if (key == "gamma_min") {
    c.gamma_min = parse_number<double>(key, value);
  } else if (key == "cfl_c") {
    c.cfl_c = parse_number<double>(key, value);
  } else if (key == "cfl_eps") {
    c.cfl_eps = parse_number<double>(key, value);
  } else if (key == "track_l6") {
    c.track_l6 = parse_bool(key, value);
  } else if (key == "verbose") {
    c.verbose = parse_bool(key, value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

void apply_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(c, t.substr(0, eq), t.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& c) {
  if (c.degrees.empty() || c.betas.empty() || c.nx.empty() || c.taus.empty()) {
    throw ConfigError("degree, beta, nx and tau lists must be non-empty");
  }
  for (int k : c.degrees) {
    if (k < 1 || k > 3) throw ConfigError("degree must be 1, 2 or 3");
  }
  for (double b : c.betas) {
    if (!(b >= 0.0)) throw ConfigError("beta must be non-negative");
  }
  for (int n : c.nx) {
    if (n < 1) throw ConfigError("nx must be >= 1");
  }
  for (double t : c.taus) {
    if (!(t > 0.0)) throw ConfigError("tau must be positive");
  }
  if (!(c.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(c.c2 > 0.0)) throw ConfigError("c2 must be positive");
  if (!(c.solver_tol > 0.0)) throw ConfigError("solver_tol must be positive");
  if (!(c.cfl_c > 0.0)) throw ConfigError("cfl_c must be positive");
  if (!(c.cfl_eps >= 0.0) || !(c.cfl_eps < 1.0 / 3.0)) {
    throw ConfigError("cfl_eps must lie in [0, 1/3)");
  }
  if (c.experiment == Experiment::kInviscid) {
    if (c.nx.size() != c.taus.size()) {
      throw ConfigError("inviscid: nx and tau lists are paired and must have equal length");
    }
    for (double b : c.betas) {
      if (!(b > 0.0)) throw ConfigError("inviscid: beta values must be positive");
    }
  }
  if (c.experiment == Experiment::kPulse) {
    if (!(c.tau_ref > 0.0)) throw ConfigError("pulse: tau_ref must be positive");
    for (int n : c.nx) {
      int m = n;
      while (m < c.nx_ref) m *= 2;
      if (m != c.nx_ref) {
        throw ConfigError("pulse: nx_ref must be every ladder nx times a power of two");
      }
    }
  }
}

std::string describe(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "experiment=" << to_string(c.experiment) << '\n'
     << "degree=" << fmt_list(c.degrees) << '\n'
     << "beta=" << fmt_list(c.betas) << '\n'
     << "nx=" << fmt_list(c.nx) << '\n'
     << "tau=" << fmt_list(c.taus) << '\n'
     << "t_end=" << fmt(c.t_end) << '\n'
     << "kappa=" << fmt(c.kappa) << '\n'
     << "c2=" << fmt(c.c2) << '\n'
     << "ell=" << fmt(c.ell) << '\n'
     << "c_sp=" << fmt(c.c_sp) << '\n'
     << "c_time=" << fmt(c.c_time) << '\n'
     << "nx_ref=" << c.nx_ref << '\n'
     << "tau_ref=" << fmt(c.tau_ref) << '\n'
     << "out=" << c.out << '\n'
     << "reproducible=" << (c.reproducible ? "true" : "false") << '\n'
     << "solver=" << (c.solver == SolverKind::kDirect ? "direct" : "iterative") << '\n'
     << "solver_tol=" << fmt(c.solver_tol) << '\n'
     << "gamma_min=" << fmt(c.gamma_min) << '\n'
     << "cfl_c=" << fmt(c.cfl_c) << '\n'
     << "cfl_eps=" << fmt(c.cfl_eps) << '\n'
     << "track_l6=" << (c.track_l6 ? "true" : "false") << '\n'
     << "verbose=" << (c.verbose ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace kuz
