#include "kuz/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>

#include "kuz/analysis.hpp"
#include "kuz/errors.hpp"
#include "kuz/fe_space.hpp"
#include "kuz/mesh.hpp"
#include "kuz/stepper.hpp"

namespace kuz {
namespace {

constexpr Rect kUnitSquare{0.0, 1.0, 0.0, 1.0};
constexpr Rect kPulseDomain{-4.0, 4.0, -4.0, 4.0};

StepperOptions stepper_options(const ExperimentConfig& cfg) {
  StepperOptions o;
  o.solver.kind = cfg.solver;
  o.solver.tol = cfg.solver_tol;
  o.gamma_min = cfg.gamma_min;
  return o;
}

ModelParams model(const ExperimentConfig& cfg, double beta) {
  ModelParams p;
  p.kappa = cfg.kappa;
  p.c2 = cfg.c2;
  p.beta = beta;
  p.ell = cfg.ell;
  return p;
}

std::string label(const char* what, int k, double h, double tau, double beta) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s k=%d h=%.4g tau=%.4g beta=%.4g", what, k, h, tau, beta);
  return buf;
}

class Driver {
 public:
  explicit Driver(const ExperimentConfig& cfg) : cfg_(cfg) {}

  void log(const std::string& msg) const {
    if (cfg_.verbose) std::cerr << "[kuz] " << msg << '\n';
  }

  void check_cfl(double h, double tau, int k, double beta) {
    const CflReport r = cfl_check(h, tau, k, beta, cfg_.cfl_c, cfg_.cfl_eps);
    if (!r.ok) result_.warnings.push_back(label("cfl", k, h, tau, beta) + ": " + r.message);
  }

  /// Runs `body`; a numerical failure is recorded and yields nullopt.
  template <class F>
  auto guarded(const std::string& what, F&& body) -> std::optional<decltype(body())> {
    try {
      return body();
    } catch (const NumericalError& e) {
      fail(what, e.what());
      return std::nullopt;
    }
  }

  void fail(const std::string& what, const std::string& msg) {
    result_.failures.push_back(what + ": " + msg);
    log("FAILED " + what + ": " + msg);
  }

  void note_stats(const RunStats& st) {
    min_nd_ = std::min(min_nd_, st.min_nondegeneracy);
  }

  std::vector<ResultRow>& rows() { return result_.rows; }

  ExperimentResult finish() {
    result_.min_nondegeneracy = std::isfinite(min_nd_) ? min_nd_ : 0.0;
    return std::move(result_);
  }

 private:
  const ExperimentConfig& cfg_;
  ExperimentResult result_;
  double min_nd_ = std::numeric_limits<double>::infinity();
};

/// Rates along one refinement family rows[first, first + n), against the
/// given parameter column; rows without an error break the chain.
template <class Param, class Err>
void fill_rates(std::vector<ResultRow>& rows, std::size_t first, std::size_t n, Param param,
                Err err) {
  for (std::size_t i = first + 1; i < first + n; ++i) {
    const auto e0 = err(rows[i - 1]);
    const auto e1 = err(rows[i]);
    if (!e0 || !e1 || !(*e0 > 0.0) || !(*e1 > 0.0)) continue;
    const double p0 = param(rows[i - 1]);
    const double p1 = param(rows[i]);
    rows[i].rate = std::log(*e0 / *e1) / std::log(p0 / p1);
  }
}

const auto by_h = [](const ResultRow& r) { return r.h; };
const auto by_tau = [](const ResultRow& r) { return r.tau; };
const auto by_beta = [](const ResultRow& r) { return r.beta; };
const auto err_e = [](const ResultRow& r) { return r.err_grad_dt; };
const auto err_ebar = [](const ResultRow& r) { return r.ebar; };

struct ManufacturedOutcome {
  ErrorRecord rec;
  RunStats stats;
};

ManufacturedOutcome run_manufactured(const ExperimentConfig& cfg, const FeSpace& space,
                                     double beta, double tau) {
  ModelParams p = model(cfg, beta);
  p.forcing = manufactured_forcing(p, cfg.c_sp, cfg.c_time);
  const ManufacturedSolution sol{cfg.c_sp, cfg.c_time};
  ManufacturedErrorTracker tracker(space, p, sol, tau, cfg.track_l6);
  ManufacturedOutcome out;
  const StepperState final_state =
      run(space, p, sol.initial_data(), tau, cfg.t_end, std::ref(tracker), stepper_options(cfg),
          &out.stats);
  out.rec = tracker.record(final_state);
  return out;
}

ResultRow base_row(std::string experiment, int k, double h, double tau, double beta) {
  ResultRow r;
  r.experiment = std::move(experiment);
  r.k = k;
  r.h = h;
  r.tau = tau;
  r.beta = beta;
  return r;
}

void fill_errors(ResultRow& row, const ManufacturedOutcome& o, bool l6) {
  row.t = o.rec.t;
  row.err_grad_dt = o.rec.err_grad_dt;
  row.err_dt2 = o.rec.err_dt2;
  if (l6) row.err_grad_l6_acc = o.rec.err_grad_l6_acc;
}

/// Final time reached by run() for the given step.
double final_time(double tau, double t_end) {
  long n = 1;
  double t = tau;
  while (t < t_end - 1e-9 * tau) t = static_cast<double>(++n) * tau;
  return t;
}

/// Number of refine_uniform levels taking nx_from to nx_to.
int levels_between(int nx_from, int nx_to) {
  int levels = 0;
  while (nx_from < nx_to) {
    nx_from *= 2;
    ++levels;
  }
  if (nx_from != nx_to) throw ConfigError("meshes are not related by uniform refinement");
  return levels;
}

Mesh refined(const Mesh& base, int levels) {
  Mesh m = base;
  for (int i = 0; i < levels; ++i) m = refine_uniform(m);
  return m;
}

}  // namespace

ExperimentResult run_space_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  Driver d(cfg);
  const double tau = cfg.taus.front();
  for (int k : cfg.degrees) {
    for (double beta : cfg.betas) {
      const std::size_t first = d.rows().size();
      for (int nx : cfg.nx) {
        const FeSpace space(build_rect_mesh(kUnitSquare, nx, nx), k);
        const double h = mesh_size(space.mesh());
        d.check_cfl(h, tau, k, beta);
        ResultRow row = base_row("space-conv", k, h, tau, beta);
        row.t = final_time(tau, cfg.t_end);
        const std::string what = label("space-conv", k, h, tau, beta);
        d.log(what);
        if (auto o = d.guarded(what, [&] { return run_manufactured(cfg, space, beta, tau); })) {
          fill_errors(row, *o, cfg.track_l6);
          d.note_stats(o->stats);
        }
        d.rows().push_back(std::move(row));
      }
      fill_rates(d.rows(), first, cfg.nx.size(), by_h, err_e);
    }
  }
  return d.finish();
}

ExperimentResult run_time_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  Driver d(cfg);
  for (int k : cfg.degrees) {
    for (int nx : cfg.nx) {
      const FeSpace space(build_rect_mesh(kUnitSquare, nx, nx), k);
      const double h = mesh_size(space.mesh());
      for (double beta : cfg.betas) {
        const std::size_t first = d.rows().size();
        for (double tau : cfg.taus) {
          d.check_cfl(h, tau, k, beta);
          ResultRow row = base_row("time-conv", k, h, tau, beta);
          row.t = final_time(tau, cfg.t_end);
          const std::string what = label("time-conv", k, h, tau, beta);
          d.log(what);
          if (auto o = d.guarded(what, [&] { return run_manufactured(cfg, space, beta, tau); })) {
            fill_errors(row, *o, cfg.track_l6);
            d.note_stats(o->stats);
          }
          d.rows().push_back(std::move(row));
        }
        fill_rates(d.rows(), first, cfg.taus.size(), by_tau, err_e);
      }
    }
  }
  return d.finish();
}

ExperimentResult run_inviscid(const ExperimentConfig& cfg) {
  validate(cfg);
  Driver d(cfg);
  const ManufacturedSolution sol{cfg.c_sp, cfg.c_time};
  const InitialData data = sol.initial_data();
  const StepperOptions opts = stepper_options(cfg);
  for (int k : cfg.degrees) {
    for (std::size_t i = 0; i < cfg.nx.size(); ++i) {
      const double tau = cfg.taus[i];
      const FeSpace space(build_rect_mesh(kUnitSquare, cfg.nx[i], cfg.nx[i]), k);
      const double h = mesh_size(space.mesh());
      const double t_final = final_time(tau, cfg.t_end);

      const std::string twin_what = label("inviscid", k, h, tau, 0.0);
      d.log(twin_what);
      const auto twin = d.guarded(twin_what, [&] {
        RunStats st;
        StepperState s = run(space, model(cfg, 0.0), data, tau, cfg.t_end, {}, opts, &st);
        d.note_stats(st);
        return s;
      });

      const std::size_t first = d.rows().size();
      for (double beta : cfg.betas) {
        d.check_cfl(h, tau, k, beta);
        ResultRow row = base_row("inviscid", k, h, tau, beta);
        row.t = t_final;
        const std::string what = label("inviscid", k, h, tau, beta);
        d.log(what);
        if (twin) {
          const auto diff = d.guarded(what, [&] {
            RunStats st;
            const StepperState s = run(space, model(cfg, beta), data, tau, cfg.t_end, {}, opts, &st);
            d.note_stats(st);
            return compare_states_nested(space, twin->u, twin->v, space, s.u, s.v);
          });
          if (diff) row.ebar = diff->ebar();
        }
        d.rows().push_back(std::move(row));
      }
      fill_rates(d.rows(), first, cfg.betas.size(), by_beta, err_ebar);
    }
  }
  return d.finish();
}

ExperimentResult run_pulse(const ExperimentConfig& cfg) {
  validate(cfg);
  Driver d(cfg);
  const InitialData data = gaussian_pulse_data();
  const StepperOptions opts = stepper_options(cfg);

  const int nx_base = *std::min_element(cfg.nx.begin(), cfg.nx.end());
  const Mesh base = build_rect_mesh(kPulseDomain, nx_base, nx_base);
  const int ref_levels = levels_between(nx_base, cfg.nx_ref);

  for (int k : cfg.degrees) {
    const FeSpace ref_space(refined(base, ref_levels), k);
    const double h_ref = mesh_size(ref_space.mesh());
    const double t_ref = final_time(cfg.tau_ref, cfg.t_end);

    for (double beta : cfg.betas) {
      const ModelParams p = model(cfg, beta);
      const std::string ref_what = label("pulse-ref", k, h_ref, cfg.tau_ref, beta);
      d.log(ref_what);
      const auto ref = d.guarded(ref_what, [&] {
        RunStats st;
        StepperState s = run(ref_space, p, data, cfg.tau_ref, cfg.t_end, {}, opts, &st);
        d.note_stats(st);
        return s;
      });

      auto measure = [&](const FeSpace& space, double tau, ResultRow& row,
                         const std::string& what) {
        row.t = final_time(tau, cfg.t_end);
        if (!ref) {
          return;
        }
        if (std::abs(row.t - t_ref) > 1e-9 * cfg.t_end) {
          d.fail(what, "final time differs from the reference run");
          return;
        }
        const auto diff = d.guarded(what, [&] {
          RunStats st;
          const StepperState s = run(space, p, data, tau, cfg.t_end, {}, opts, &st);
          d.note_stats(st);
          return compare_states_nested(space, s.u, s.v, ref_space, ref->u, ref->v);
        });
        if (diff) {
          row.err_grad_dt = diff->grad_v;
          row.ebar = diff->ebar();
        }
      };

      std::vector<int> ladder = cfg.nx;
      std::sort(ladder.begin(), ladder.end());
      std::size_t first = d.rows().size();
      for (int nx : ladder) {
        const FeSpace space(refined(base, levels_between(nx_base, nx)), k);
        const double h = mesh_size(space.mesh());
        d.check_cfl(h, cfg.tau_ref, k, beta);
        ResultRow row = base_row("pulse-space", k, h, cfg.tau_ref, beta);
        const std::string what = label("pulse-space", k, h, cfg.tau_ref, beta);
        d.log(what);
        measure(space, cfg.tau_ref, row, what);
        d.rows().push_back(std::move(row));
      }
      fill_rates(d.rows(), first, ladder.size(), by_h, err_e);

      first = d.rows().size();
      for (double tau : cfg.taus) {
        d.check_cfl(h_ref, tau, k, beta);
        ResultRow row = base_row("pulse-time", k, h_ref, tau, beta);
        const std::string what = label("pulse-time", k, h_ref, tau, beta);
        d.log(what);
        measure(ref_space, tau, row, what);
        d.rows().push_back(std::move(row));
      }
      fill_rates(d.rows(), first, cfg.taus.size(), by_tau, err_e);
    }
  }
  return d.finish();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::kSpaceConv: return run_space_convergence(cfg);
    case Experiment::kTimeConv: return run_time_convergence(cfg);
    case Experiment::kInviscid: return run_inviscid(cfg);
    case Experiment::kPulse: return run_pulse(cfg);
  }
  throw ConfigError("unknown experiment");
}

}  // namespace kuz
