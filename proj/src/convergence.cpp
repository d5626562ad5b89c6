#include "kinwave/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "kinwave/coupling.hpp"
#include "kinwave/errors.hpp"

namespace kinwave {

namespace {

double relative_drift(double now, double start) {
  const double d = std::abs(now - start);
  return start != 0.0 ? d / std::abs(start) : d;
}

// max over the nodes of `coarse` of |coarse - fine|, fine being r times finer.
double coarse_node_distance(const Array2D& coarse, const Array2D& fine, int r) {
  double d = 0.0;
  for (int i = 0; i < coarse.rows(); ++i)
    for (int k = 0; k < coarse.cols(); ++k)
      d = std::max(d, std::abs(coarse(i, k) - fine(r * i, r * k)));
  return d;
}

}  // namespace

ConvergenceReport convergence_study(const Config& config) {
  ConvergenceReport rep;
  const PhaseGrid base = make_grid(config);
  const int n0 = static_cast<int>(std::floor(config.grid.t_final / base.dt + 1e-9));
  if (n0 < 1) throw ValidationError("t_final is shorter than one coarse step");
  rep.t_end = n0 * base.dt;
  const RunOptions opts = [&] {
    RunOptions o = options_from(config);
    o.keep_f_history = false;
    return o;
  }();
  rep.exact_reference = !opts.coupling && config.data.field_data_trivial();

  std::vector<Array2D> finals;
  for (int r : {1, 2, 4}) {
    GridSpec spec{config.grid.x_min, config.grid.x_max, config.grid.v_min, config.grid.v_max,
                  config.grid.nx * r, config.grid.nv * r};
    const PhaseGrid g = with_steps(build_grid(spec, rep.t_end, config.data.x_support()), n0 * r);
    RunResult run_result = run(g, config.data, opts);
    const auto& first = run_result.series.front();
    const auto& last = run_result.series.back();
    ConvergenceLevel L;
    L.nx = g.nx;
    L.nv = g.nv;
    L.steps = g.n_steps;
    L.dx = g.dx();
    L.energy_drift = relative_drift(last.total, first.total);
    L.mass_drift = relative_drift(last.mass, first.mass);
    if (rep.exact_reference) {
      const auto& f = run_result.state.distribution.values;
      const double t = run_result.state.time();
      for (int i = 0; i < g.x_nodes(); ++i)
        for (int k = 0; k < g.v_nodes(); ++k) {
          const double v = g.v(k);
          const double exact = config.data.f0.value(g.x(i) - v_hat(v) * t, v);
          L.transport_error = std::max(L.transport_error, std::abs(f(i, k) - exact));
        }
    }
    finals.push_back(std::move(run_result.state.distribution.values));
    rep.levels.push_back(L);
  }
  if (!rep.exact_reference) {
    rep.levels[0].transport_error = std::numeric_limits<double>::quiet_NaN();
    rep.levels[1].transport_error = coarse_node_distance(finals[0], finals[1], 2);
    rep.levels[2].transport_error = coarse_node_distance(finals[1], finals[2], 2);
  }
  auto order = [](double coarse, double fine) {
    return (coarse > 0.0 && fine > 0.0) ? std::log2(coarse / fine)
                                        : std::numeric_limits<double>::quiet_NaN();
  };
  const auto& lv = rep.levels;
  if (rep.exact_reference) {
    rep.transport_orders = {order(lv[0].transport_error, lv[1].transport_error),
                            order(lv[1].transport_error, lv[2].transport_error)};
  } else {
    rep.transport_orders = {order(lv[1].transport_error, lv[2].transport_error)};
  }
  rep.energy_orders = {order(lv[0].energy_drift, lv[1].energy_drift),
                       order(lv[1].energy_drift, lv[2].energy_drift)};
  return rep;
}

}  // namespace kinwave
