// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "kinwave/config.hpp"
#include "kinwave/convergence.hpp"
#include "kinwave/coupling.hpp"
#include "kinwave/diagnostics.hpp"
#include "kinwave/division_lemma.hpp"
#include "kinwave/errors.hpp"
#include "kinwave/output.hpp"
#include "kinwave/picard.hpp"
#include "kinwave/wave.hpp"

namespace fs = std::filesystem;
using namespace kinwave;

namespace {

// Pinned tolerances.
constexpr double kFreeStreamTol = 1e-6;
constexpr double kDepthOneOrder = 3.0;
constexpr double kEnergyDrift = 1e-4;
constexpr double kEnergyHalving = 3.5;
constexpr double kMassDrift = 1e-6;
constexpr double kPeakTol = 1e-3;
constexpr double kUndershoot = -1e-6;
constexpr double kConeTol = 1e-12;
constexpr double kThreeWayFactor = 10.0;  // times dx^2
constexpr double kPicardT = 0.25;
constexpr double kPicardRatio = 0.5;
constexpr double kPicardDistance = 1e-8;
constexpr double kPicardMatchFactor = 10.0;  // times dx^2
constexpr double kGronwallSlack = 1e-6;
constexpr double kRepresentationC = 1.0;
constexpr double kDivisionTol = 1e-8;
constexpr double kClosedFormTol = 1e-10;

int failures = 0;

void report(bool pass, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Config desk(int n) {
  Config c = desk_config();
  c.grid.nx = c.grid.nv = n;
  return c;
}

double relative_change(double a, double b) { return std::abs(b - a) / std::abs(a); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A desk run that also writes the CSV outputs into `dir`.
struct DeskRun {
  RunResult result;
  double worst_peak_error = 0.0;
};

DeskRun desk_run(const Config& cfg, const fs::path& dir, bool keep_history) {
  prepare_output_directory(dir);
  const PhaseGrid grid = make_grid(cfg);
  RunOptions o = options_from(cfg);
  o.keep_f_history = keep_history;
  SnapshotWriter snapshots(dir, 50, grid.n_steps, true);
  DeskRun d;
  const double f0_sup = cfg.data.f0.sup_abs();
  d.result = run(grid, cfg.data, o, [&](const SimulationState& s) {
    snapshots(s);
    d.worst_peak_error =
        std::max(d.worst_peak_error, std::abs(peak_value(s) - f0_sup));
  });
  write_diagnostics_csv(dir / "diagnostics.csv", d.result.series);
  return d;
}

void free_streaming() {
  Config cfg = desk(256);
  cfg.physics.coupling = false;
  const RunResult r = run(cfg);
  const auto& s = r.state;
  const double t = s.time();
  double err = 0.0;
  for (int i = 0; i <= s.grid.nx; ++i)
    for (int k = 0; k <= s.grid.nv; ++k) {
      const double v = s.grid.v(k);
      err = std::max(err, std::abs(s.distribution.values(i, k) -
                                   cfg.data.f0.value(s.grid.x(i) - v_hat(v) * t, v)));
    }

  Config d1 = desk(64);
  d1.physics.coupling = false;
  d1.physics.transport = TransportMode::DepthOne;
  const ConvergenceReport c = convergence_study(d1);
  const double order = *std::min_element(c.transport_orders.begin(), c.transport_orders.end());
  report(err <= kFreeStreamTol && order >= kDepthOneOrder, "free_streaming",
         fmt("analytic Linf %.3e (<= %.0e); depth-one errors %.3e %.3e %.3e, orders %.2f %.2f "
             "(>= %.1f)",
             err, kFreeStreamTol, c.levels[0].transport_error, c.levels[1].transport_error,
             c.levels[2].transport_error, c.transport_orders[0], c.transport_orders[1],
             kDepthOneOrder));
}

double energy_drift(const std::vector<DiagnosticsRecord>& series) {
  return relative_change(series.front().total, series.back().total);
}

void wave_exactness(const DeskRun& desk_run256) {
  const PhaseGrid g = make_grid(desk(256));

  InitialData d;
  d.a0 = Profile1D::bump(0.0, 1.0, 1.0);
  d.a1 = Profile1D::bump(0.5, 0.7, -0.4);
  const FieldState f0 = initial_fields(g, d);
  const std::vector<double> zero(g.x_nodes(), 0.0);
  FieldState f = f0;
  bool shift_exact = true;
  for (int n = 1; n <= 40; ++n) {
    f = step_b_fields(f, zero, zero, g.dt);
    for (int i = 0; i + n < g.x_nodes(); ++i) shift_exact = shift_exact && f.b_plus[i] == f0.b_plus[i + n];
    for (int i = n; i < g.x_nodes(); ++i) shift_exact = shift_exact && f.b_minus[i] == f0.b_minus[i - n];
  }

  std::vector<double> one(g.x_nodes(), 1.0);
  one.front() = one.back() = 0.0;
  FieldState c = initial_fields(g, InitialData{});
  double cone_err = 0.0;
  for (int n = 1; n <= 100; ++n) {
    c = step_b_fields(c, one, one, g.dt);
    const double t = n * g.dt;
    for (int i = n + 1; i + n + 1 < g.x_nodes(); ++i)
      cone_err = std::max({cone_err, std::abs(c.b_plus[i] - t), std::abs(c.b_minus[i] - t),
                           std::abs(c.a[i] - 0.5 * t * t)});
  }

  const auto samples = representation_samples(desk_run256.result.state, 10, 10, -5.0, 5.0);
  double evo_pa = 0.0, evo_dal = 0.0, pa_dal = 0.0;
  for (const auto& s : samples) {
    evo_pa = std::max(evo_pa, std::abs(s.evolution - s.paA));
    evo_dal = std::max(evo_dal, std::abs(s.evolution - s.dalembert_diff));
    pa_dal = std::max(pa_dal, std::abs(s.paA - s.dalembert_diff));
  }
  const double tol = kThreeWayFactor * g.dx() * g.dx();
  const bool pass = shift_exact && cone_err <= kConeTol && evo_pa <= tol && evo_dal <= tol &&
                    pa_dal <= tol;
  report(pass, "wave_exactness",
         fmt("shift bit-exact %s; cone err %.2e (<= %.0e); dtA pairwise %.2e %.2e %.2e "
             "(<= %.3e)",
             shift_exact ? "yes" : "no", cone_err, kConeTol, evo_pa, evo_dal, pa_dal, tol));
}

void picard(const Config& cfg) {
  const PhaseGrid base = make_grid(cfg);
  const PicardProblem p = picard_problem(base, cfg.data, kPicardT, cfg.tolerances.support_eps);
  const PicardResult r = picard_solve(p, cfg.picard.max_iter, 1e-10);

  double worst_ratio = 0.0;
  bool monotone = true;
  for (std::size_t n = 0; n < r.steps.size(); ++n) {
    if (!std::isnan(r.steps[n].ratio)) worst_ratio = std::max(worst_ratio, r.steps[n].ratio);
    if (n > 0) monotone = monotone && r.steps[n].distance < r.steps[n - 1].distance;
  }
  const double last = r.steps.empty() ? INFINITY : r.steps.back().distance;

  std::vector<Array2D> evolved;
  run(with_steps(base, p.grid.n_steps), cfg.data, RunOptions{},
      [&](const SimulationState& s) { evolved.push_back(s.distribution.values); });
  double match = 0.0;
  for (std::size_t n = 0; n < evolved.size(); ++n) {
    const auto& a = evolved[n].data();
    const auto& b = r.fixed_point.g[n].data();
    for (std::size_t q = 0; q < a.size(); ++q) match = std::max(match, std::abs(a[q] - b[q]));
  }
  const double match_tol = kPicardMatchFactor * base.dx() * base.dx();
  report(r.converged && worst_ratio <= kPicardRatio && monotone && last < kPicardDistance &&
             match <= match_tol,
         "picard_contraction",
         fmt("T_eff %.4f, %zu iterations, max ratio %.3e (<= %.1f), monotone %s, last distance "
             "%.2e (< %.0e), fixed point vs evolve %.2e (<= %.3e)",
             p.t_end(), r.steps.size(), worst_ratio, kPicardRatio, monotone ? "yes" : "no", last,
             kPicardDistance, match, match_tol));

  bool all = true;
  double h1 = 0.0, h2 = -INFINITY, h3 = 0.0, h4 = 0.0, h3b = 0.0, h4b = 0.0;
  for (const auto& s : r.steps) {
    all = all && s.audit.passes();
    h1 = std::max(h1, s.audit.h1.value);
    h2 = std::max(h2, s.audit.h2.value);
    h3 = std::max(h3, s.audit.h3.value);
    h4 = std::max(h4, s.audit.h4.value);
    h3b = s.audit.h3.bound;
    h4b = s.audit.h4.bound;
  }
  report(all && !r.steps.empty(), "bt_audit",
         fmt("%zu iterates; max H1 %.4f (<= %.4f), H2 excess %.3f (< 0), H3 %.3f (<= %.3f), "
             "H4 %.3f (<= %.3f)",
             r.steps.size(), h1, r.steps.empty() ? 0.0 : r.steps.front().audit.h1.bound, h2, h3,
             h3b, h4, h4b));
}

void gronwall(DeskRun& d, const PhaseGrid& grid, const InitialData& data) {
  auto& series = d.result.series;
  const GronwallAudit a =
      gronwall_audit(series, gronwall_constants(data, series.front().p_of_t), grid);
  const auto& last = a.steps.back();
  const bool p_end = last.lhs_iii <= last.rhs_iii;
  report(a.holds(kGronwallSlack) && p_end, "gronwall_chain",
         fmt("min margins (i) %.3e (ii) %.3e (iii) %.3e (>= %.0e); P(%.3f) = %.4f <= %.4f",
             a.min_margin_i, a.min_margin_ii, a.min_margin_iii, -kGronwallSlack, last.t,
             last.lhs_iii, last.rhs_iii));
}

void representation(const DeskRun& d) {
  const auto& s = d.result.state;
  const auto samples = representation_samples(s, 10, 10, -5.0, 5.0);
  double worst = 0.0, worst_printed = 0.0;
  for (const auto& r : samples) {
    worst = std::max(worst, std::abs(r.terms.total - r.fd_dxdtA));
    worst_printed = std::max(worst_printed, std::abs(r.terms.as_printed - r.fd_dxdtA));
  }
  const double c_fit = worst / s.grid.dx();
  std::vector<double> v(s.grid.v_nodes());
  for (int k = 0; k < s.grid.v_nodes(); ++k) v[k] = s.grid.v(k);
  bool kernel_ok = true;
  try {
    kernel_table(v);
  } catch (const AuditFailure&) {
    kernel_ok = false;
  }
  double kernel_ratio = 0.0;
  for (double z : v)
    kernel_ratio = std::max(kernel_ratio, std::max(std::abs(kernel_plus(z)), std::abs(kernel_minus(z))) /
                                              std::sqrt(1.0 + z * z));
  report(samples.size() == 100 && c_fit <= kRepresentationC && kernel_ok, "representation",
         fmt("%zu samples, fitted C %.4f (<= %.1f), as-printed variant off by %.3e; kernel "
             "bound at %d v-nodes %s (max |K| / sqrt(1+v^2) = %.3f, bound 2)",
             samples.size(), c_fit, kRepresentationC, worst_printed, s.grid.v_nodes(),
             kernel_ok ? "holds" : "fails", kernel_ratio));
}

void division_lemma() {
  const auto rows = division_sweep(default_a_sweep(), test_function_presets());
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.abs_err);
  const double closed = std::abs(pair_m_dxY(0.0, test_function("centered")) - 128.0 / 315.0);
  report(worst <= kDivisionTol && closed <= kClosedFormTol, "division_lemma",
         fmt("%zu pairs, max |lhs - rhs| %.2e (<= %.0e); a = 0 closed form err %.2e (<= %.0e)",
             rows.size(), worst, kDivisionTol, closed, kClosedFormTol));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    free_streaming();

    const Config cfg256 = desk(256);
    const PhaseGrid grid256 = make_grid(cfg256);
    const fs::path root = fs::temp_directory_path() / "kinwave_acceptance";
    fs::remove_all(root);
    DeskRun d256 = desk_run(cfg256, root / "a", true);

    const Config cfg512 = desk(512);
    RunOptions lean = options_from(cfg512);
    lean.keep_f_history = false;
    const RunResult r512 = run(make_grid(cfg512), cfg512.data, lean);
    const double drift256 = energy_drift(d256.result.series);
    const double drift512 = energy_drift(r512.series);
    report(drift256 <= kEnergyDrift && drift256 / drift512 >= kEnergyHalving, "energy",
           fmt("drift %.3e at 256 (<= %.0e), %.3e at 512, ratio %.2f (>= %.1f)", drift256,
               kEnergyDrift, drift512, drift256 / drift512, kEnergyHalving));

    const auto& series = d256.result.series;
    const double mass = relative_change(series.front().mass, series.back().mass);
    report(mass <= kMassDrift, "mass",
           fmt("relative change %.3e (<= %.0e); %.3e at 512", mass, kMassDrift,
               relative_change(r512.series.front().mass, r512.series.back().mass)));

    double undershoot = 0.0;
    for (const auto& r : series) undershoot = std::min(undershoot, r.undershoot);
    report(d256.worst_peak_error <= kPeakTol && undershoot >= kUndershoot, "sup_norm",
           fmt("max |max f - ||f0||| %.3e (<= %.0e), raw max f at end %.6f, undershoot %.2e "
               "(>= %.0e)",
               d256.worst_peak_error, kPeakTol, series.back().max_f, undershoot, kUndershoot));

    wave_exactness(d256);
    picard(cfg256);
    gronwall(d256, grid256, cfg256.data);
    representation(d256);
    division_lemma();

    desk_run(cfg256, root / "b", false);
    bool same = true;
    int files = 0;
    for (const auto& e : fs::directory_iterator(root / "a")) {
      if (e.path().extension() != ".csv") continue;
      ++files;
      const fs::path other = root / "b" / e.path().filename();
      same = same && fs::exists(other) && slurp(e.path()) == slurp(other);
    }
    report(same && files > 0, "determinism",
           fmt("%d CSV files compared byte for byte: %s", files, same ? "identical" : "differ"));
    fs::remove_all(root);
  } catch (const std::exception& e) {
    std::printf("FAIL  %-28s %s\n", "uncaught_error", e.what());
    ++failures;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d criteria failed, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
