#pragma once

#include <optional>

namespace kinwave {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double z) const { return z >= lo && z <= hi; }
};

struct GridSpec {
  double x_min = 0.0, x_max = 0.0;
  double v_min = 0.0, v_max = 0.0;
  int nx = 0, nv = 0;
};

// Uniform (x, v) tensor grid with dt locked to dx. Nodes include both
// endpoints: nx + 1 positions and nv + 1 momenta.
struct PhaseGrid {
  double x_min = 0.0, x_max = 0.0;
  double v_min = 0.0, v_max = 0.0;
  int nx = 0, nv = 0;
  double dt = 0.0;
  int n_steps = 0;

  double dx() const { return dt; }
  double dv() const { return (v_max - v_min) / nv; }
  int x_nodes() const { return nx + 1; }
  int v_nodes() const { return nv + 1; }

  // Measured from the midpoint so a symmetric interval gives exactly
  // symmetric nodes.
  double x(int i) const { return 0.5 * (x_min + x_max) + (i - 0.5 * nx) * dx(); }
  double v(int k) const { return 0.5 * (v_min + v_max) + (k - 0.5 * nv) * dv(); }
  double time(int step) const { return step * dt; }

  Interval x_range() const { return {x_min, x_max}; }
  Interval v_range() const { return {v_min, v_max}; }
};

// Throws ValidationError on unordered bounds, sizes < 2, t_final <= 0, and
// when the light cone of `x_support` over [0, t_final] leaves the domain.
PhaseGrid build_grid(const GridSpec& spec, double t_final,
                     std::optional<Interval> x_support = std::nullopt);

// Same grid with an explicit step count (used where several resolutions
// must share one end time).
PhaseGrid with_steps(PhaseGrid grid, int n_steps);

}  // namespace kinwave
