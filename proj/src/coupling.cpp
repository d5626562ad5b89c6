#include "kinwave/coupling.hpp"

#include <cmath>
#include <sstream>

#include "kinwave/errors.hpp"
#include "kinwave/kernels.hpp"

namespace kinwave {

RunOptions options_from(const Config& c) {
  RunOptions o;
  o.coupling = c.physics.coupling;
  o.transport = c.physics.transport;
  o.clamp = c.physics.clamp;
  o.support_eps = c.tolerances.support_eps;
  o.history_cap_bytes = static_cast<std::size_t>(c.output.history_cap_mb * 1024.0 * 1024.0);
  return o;
}

namespace {

std::size_t level_bytes(const PhaseGrid& g) {
  return sizeof(double) * static_cast<std::size_t>(g.x_nodes()) * g.v_nodes();
}

void remember(SimulationState& s) {
  if (!s.options.keep_f_history || !s.f_history_complete) return;
  if ((s.f_history.size() + 1) * level_bytes(s.grid) > s.options.history_cap_bytes) {
    s.f_history_complete = false;
    return;
  }
  s.f_history.push_back(s.distribution.values);
}

void check_support(const SimulationState& s) {
  if (touches_boundary(s.distribution.box, s.grid)) {
    const auto& b = s.distribution.box;
    std::ostringstream msg;
    msg << "support of f reached the grid boundary at t = " << s.time() << " (box x in ["
        << b.x_lo << ", " << b.x_hi << "], v in [" << b.v_lo << ", " << b.v_hi << "])";
    throw LightConeViolation(msg.str());
  }
}

}  // namespace

SimulationState initialize(const PhaseGrid& grid, const InitialData& data,
                           const RunOptions& options) {
  SimulationState s;
  s.grid = grid;
  s.data = data;
  s.options = options;
  s.distribution = sample_initial(grid, data.f0, options.support_eps);
  s.fields = initial_fields(grid, data);
  s.moments = moments(s.distribution, grid);
  s.field_history = FieldHistory(x_axis_of(grid), grid.dt);
  s.field_history.push(s.fields.dt_a());
  s.source_history = SourceHistory(x_axis_of(grid), grid.dt);
  s.source_history.push(options.coupling ? s.moments.j
                                         : std::vector<double>(grid.x_nodes(), 0.0));
  remember(s);
  check_support(s);
  return s;
}

SimulationState step(SimulationState s) {
  const PhaseGrid& g = s.grid;
  const double dt = g.dt;
  const int n = s.step;
  const int nx = g.x_nodes();

  const std::vector<double> zero(nx, 0.0);
  const std::vector<double>& j_n = s.source_history.level(n);

  FieldState next = predict_b_fields(s.fields, j_n, dt);

  // Provisional field at t_{n+1}; the new current is not known yet.
  {
    std::vector<double> j_guess = j_n;
    if (s.options.coupling && n > 0) {
      const auto& j_prev = s.source_history.level(n - 1);
      for (int i = 0; i < nx; ++i) j_guess[i] = 2.0 * j_n[i] - j_prev[i];
    }
    FieldState provisional = next;
    correct_b_fields(provisional, s.fields, j_guess, dt);
    s.field_history.push(provisional.dt_a());
  }

  Array2D f_next;
  if (s.options.transport == TransportMode::Analytic) {
    kernels::fill_analytic(f_next, g, s.data.f0, s.field_history, n + 1);
  } else {
    kernels::fill_depth_one(f_next, s.distribution.values, g, s.data.f0, s.field_history, n + 1,
                            s.options.clamp);
  }
  s.distribution.values = std::move(f_next);
  s.distribution.time = g.time(n + 1);
  s.distribution.box =
      support_box(s.distribution.values, g, s.options.support_eps * s.data.f0.sup_abs());
  s.moments = moments(s.distribution, g);

  const std::vector<double>& j_new = s.options.coupling ? s.moments.j : zero;
  check_support(s);
  correct_b_fields(next, s.fields, j_new, dt);
  next.time = s.distribution.time;
  s.fields = std::move(next);
  s.field_history.replace_last(s.fields.dt_a());
  s.source_history.push(j_new);
  s.step = n + 1;
  remember(s);
  return s;
}

namespace {

template <class E>
[[noreturn]] void rethrow_at(const E& e, int step) {
  throw E("step " + std::to_string(step) + ": " + e.what());
}

}  // namespace

RunResult run(const PhaseGrid& grid, const InitialData& data, const RunOptions& options,
              const StepObserver& observer) {
  RunResult r{initialize(grid, data, options), {}};
  r.series.push_back(record(r.state));
  if (observer) observer(r.state);
  for (int k = 0; k < grid.n_steps; ++k) {
    try {
      r.state = step(std::move(r.state));
    } catch (const LightConeViolation& e) {
      rethrow_at(e, k + 1);
    } catch (const AuditFailure& e) {
      rethrow_at(e, k + 1);
    } catch (const DomainError& e) {
      rethrow_at(e, k + 1);
    } catch (const ValidationError& e) {
      rethrow_at(e, k + 1);
    }
    r.series.push_back(record(r.state));
    if (observer) observer(r.state);
  }
  return r;
}

RunResult run(const Config& config, const StepObserver& observer) {
  return run(make_grid(config), config.data, options_from(config), observer);
}

}  // namespace kinwave
