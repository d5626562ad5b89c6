// kinwave: command-line driver.
//
//   kinwave run <config> [--out DIR] [--strict]
//   kinwave picard <config> [--out DIR] [--strict]
//   kinwave convergence <config> [--out DIR]
//   kinwave division-lemma [--a-sweep A,...] [--out DIR] [--strict]
//
// Exit status: 0 ok, 1 invalid input, 2 runtime assertion (light-cone
// violation, or a failed audit under --strict). KINWAVE_VERBOSITY=0|1|2
// selects how much goes to stderr.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kinwave/convergence.hpp"
#include "kinwave/coupling.hpp"
#include "kinwave/diagnostics.hpp"
#include "kinwave/division_lemma.hpp"
#include "kinwave/errors.hpp"
#include "kinwave/output.hpp"
#include "kinwave/picard.hpp"

namespace fs = std::filesystem;
using namespace kinwave;

namespace {

int verbosity() {
  const char* v = std::getenv("KINWAVE_VERBOSITY");
  if (!v || !*v) return 1;
  return std::atoi(v);
}

template <class... Args>
void note(int level, const char* fmt, Args... args) {
  if (verbosity() >= level) {
    if constexpr (sizeof...(Args) == 0) std::fputs(fmt, stderr);
    else std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
  }
}

constexpr double kAuditSlack = 1e-6;

struct Common {
  std::string config_path;
  std::string out;
  bool strict = false;
};

Config load(const Common& c) {
  Config cfg = load_config(c.config_path);
  if (!c.out.empty()) cfg.output.directory = c.out;
  return cfg;
}

int do_evolve(const Config& cfg, bool strict) {
  const fs::path dir = cfg.output.directory;
  prepare_output_directory(dir);
  const PhaseGrid grid = make_grid(cfg);
  note(1, "evolve: %d x %d cells, dt = %.6g, %d steps", grid.nx, grid.nv, grid.dt, grid.n_steps);

  std::optional<SnapshotWriter> snapshots;
  if (cfg.output.csv) snapshots.emplace(dir, cfg.output.snapshot_every, grid.n_steps, true);
  RunResult r = run(cfg, [&](const SimulationState& s) {
    if (snapshots) (*snapshots)(s);
    note(2, "step %d  t = %.6f", s.step, s.time());
  });

  auto audit = gronwall_audit(r.series, gronwall_constants(cfg.data, r.series.front().p_of_t),
                              grid);
  if (cfg.output.csv) write_diagnostics_csv(dir / "diagnostics.csv", r.series);

  std::optional<DerivativeAudit> deriv;
  std::vector<RepresentationSample> samples;
  if (r.state.f_history_complete && r.state.step >= 2) {
    deriv = derivative_transport_audit(r.state);
    const double lo = std::max(-5.0, grid.x_min + grid.dx());
    const double hi = std::min(5.0, grid.x_max - grid.dx());
    samples = representation_samples(r.state, 10, 10, lo, hi);
  } else {
    note(1, "f history incomplete or too short: derivative and representation audits skipped");
  }
  if (cfg.output.json) write_audit_json(dir / "audit.json", audit, deriv, samples);

  const auto& a = r.series.front();
  const auto& b = r.series.back();
  const double drift = a.total != 0.0 ? std::abs(b.total - a.total) / a.total : std::abs(b.total);
  std::printf("t_end            %.6f\n", b.t);
  std::printf("energy drift     %.3e\n", drift);
  std::printf("mass change      %.3e\n", std::abs(b.mass - a.mass));
  std::printf("max f            %.12f (nodes), %.12f (between nodes)\n", b.max_f,
              peak_value(r.state));
  std::printf("undershoot       %.3e\n", b.undershoot);
  std::printf("P(0), P(end)     %.6f, %.6f\n", a.p_of_t, b.p_of_t);
  std::printf("gronwall margins (i) %.3e  (ii) %.3e  (iii) %.3e\n", audit.min_margin_i,
              audit.min_margin_ii, audit.min_margin_iii);
  if (deriv)
    std::printf("derivative sup   %.6g (bound holds: %s)\n", deriv->max_derivative_sum,
                deriv->bound_holds ? "yes" : "no");

  if (strict) {
    if (!audit.holds(kAuditSlack)) throw AuditFailure("Gronwall chain violated");
    if (deriv && !deriv->bound_holds) throw AuditFailure("derivative growth bound violated");
  }
  return 0;
}

int do_picard(const Config& cfg, bool strict) {
  const fs::path dir = cfg.output.directory;
  prepare_output_directory(dir);
  const PicardProblem p =
      picard_problem(make_grid(cfg), cfg.data, cfg.picard.T, cfg.tolerances.support_eps);
  note(1, "picard: T = %.6g (%d levels)", p.t_end(), p.grid.n_steps);
  const PicardResult r = picard_solve(p, cfg.picard.max_iter, cfg.picard.tol);

  std::printf("%4s %14s %10s %10s %s\n", "n", "distance", "ratio", "field_lip", "H1-H4");
  bool audits_ok = true;
  for (const auto& s : r.steps) {
    std::printf("%4d %14.6e %10.4g %10.4g %s\n", s.n, s.distance, s.ratio, s.field_lipschitz,
                s.audit.passes() ? "pass" : "FAIL");
    audits_ok = audits_ok && s.audit.passes();
  }
  std::printf("converged: %s\n", r.converged ? "yes" : "no");

  std::optional<ContractionSweep> sweep;
  if (cfg.picard.sweep_T_max > 0.0) {
    sweep = contraction_sweep(make_grid(cfg), cfg.data, cfg.picard.sweep_T_max,
                              cfg.tolerances.support_eps);
    if (sweep->threshold_T)
      std::printf("contraction ratio first exceeds 1 at T = %.6g\n", *sweep->threshold_T);
    else
      std::printf("contraction ratio stays <= 1 up to T = %.6g\n", cfg.picard.sweep_T_max);
  }
  if (cfg.output.json) write_picard_json(dir / "picard_report.json", p, r, sweep);
  if (strict && !audits_ok) throw AuditFailure("a Picard iterate failed the H1-H4 audit");
  return 0;
}

int do_convergence(const Config& cfg) {
  const fs::path dir = cfg.output.directory;
  prepare_output_directory(dir);
  const ConvergenceReport r = convergence_study(cfg);
  std::printf("t_end = %.6f  (%s)\n", r.t_end,
              r.exact_reference ? "error vs exact free streaming" : "successive differences");
  std::printf("%6s %6s %14s %14s %14s\n", "nx", "nv", "transport_err", "energy_drift", "mass_drift");
  for (const auto& L : r.levels)
    std::printf("%6d %6d %14.6e %14.6e %14.6e\n", L.nx, L.nv, L.transport_error, L.energy_drift,
                L.mass_drift);
  for (double o : r.transport_orders) std::printf("transport order %.3f\n", o);
  for (double o : r.energy_orders) std::printf("energy-drift order %.3f\n", o);
  if (cfg.output.json) write_convergence_json(dir / "convergence.json", r);
  return 0;
}

int do_division(const std::vector<double>& a_values, const std::string& out, bool strict) {
  const auto rows = division_sweep(a_values, test_function_presets());
  double worst = 0.0;
  std::printf("%8s %10s %22s %22s %10s\n", "a", "phi", "lhs", "rhs", "abs_err");
  for (const auto& r : rows) {
    std::printf("%8.3f %10s %22.15g %22.15g %10.2e\n", r.a, r.phi_preset.c_str(), r.lhs, r.rhs,
                r.abs_err);
    worst = std::max(worst, r.abs_err);
  }
  const bool ok = worst <= 1e-8;
  std::printf("max abs_err %.3e  %s\n", worst, ok ? "PASS" : "FAIL");
  const fs::path dir = out.empty() ? fs::path("out") : fs::path(out);
  prepare_output_directory(dir);
  write_division_json(dir / "division_report.json", rows);
  if (strict && !ok) throw AuditFailure("division identity off by more than 1e-8");
  return 0;
}

int dispatch(const Config& cfg, bool strict) {
  switch (cfg.mode) {
    case RunMode::Evolve: return do_evolve(cfg, strict);
    case RunMode::Picard: return do_picard(cfg, strict);
    case RunMode::Convergence: return do_convergence(cfg);
    case RunMode::DivisionLemma: return do_division(default_a_sweep(), cfg.output.directory, strict);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic 1D1V Vlasov-wave simulator and verification tool"};
  app.require_subcommand(1);

  Common run_opts, picard_opts, conv_opts;
  auto add_common = [](CLI::App* sub, Common& c, bool with_strict) {
    sub->add_option("config", c.config_path, "configuration file")->required();
    sub->add_option("--out", c.out, "output directory (overrides [output] directory)");
    if (with_strict) sub->add_flag("--strict", c.strict, "exit 2 when an audit fails");
  };
  auto* run_cmd = app.add_subcommand("run", "run the configured mode (evolve by default)");
  add_common(run_cmd, run_opts, true);
  auto* picard_cmd = app.add_subcommand("picard", "Picard iteration on [0, T]");
  add_common(picard_cmd, picard_opts, true);
  auto* conv_cmd = app.add_subcommand("convergence", "three-resolution convergence study");
  add_common(conv_cmd, conv_opts, false);

  auto* div_cmd = app.add_subcommand("division-lemma", "pair both sides of the division identity");
  std::vector<double> a_sweep = default_a_sweep();
  std::string div_out;
  bool div_strict = false;
  div_cmd->add_option("--a-sweep", a_sweep, "values of a in (-1, 1)")->delimiter(',');
  div_cmd->add_option("--out", div_out, "output directory (default: out)");
  div_cmd->add_flag("--strict", div_strict, "exit 2 when the identity fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return dispatch(load(run_opts), run_opts.strict);
    if (*picard_cmd) return do_picard(load(picard_opts), picard_opts.strict);
    if (*conv_cmd) return do_convergence(load(conv_opts));
    if (*div_cmd) return do_division(a_sweep, div_out, div_strict);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const RuntimeAssertion& e) {
    std::fprintf(stderr, "runtime assertion: %s\n", e.what());
    return 2;
  }
  return 0;
}
