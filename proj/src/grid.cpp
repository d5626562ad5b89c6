#include "kinwave/grid.hpp"

#include <cmath>
#include <sstream>

#include "kinwave/errors.hpp"

namespace kinwave {

PhaseGrid build_grid(const GridSpec& spec, double t_final, std::optional<Interval> x_support) {
  if (!(spec.x_max > spec.x_min)) throw ValidationError("grid: x_max must exceed x_min");
  if (!(spec.v_max > spec.v_min)) throw ValidationError("grid: v_max must exceed v_min");
  if (spec.nx < 2) throw ValidationError("nx must be >= 2");
  if (spec.nv < 2) throw ValidationError("nv must be >= 2");
  if (!(t_final > 0.0)) throw ValidationError("t_final must be > 0");

  PhaseGrid g;
  g.x_min = spec.x_min;
  g.x_max = spec.x_max;
  g.v_min = spec.v_min;
  g.v_max = spec.v_max;
  g.nx = spec.nx;
  g.nv = spec.nv;
  g.dt = (spec.x_max - spec.x_min) / spec.nx;
  // t_final / dt is often an integer up to rounding (1 / 0.01 = 100.000...01).
  g.n_steps = static_cast<int>(std::ceil(t_final / g.dt - 1e-9));

  if (x_support) {
    const double need_lo = x_support->lo - t_final;
    const double need_hi = x_support->hi + t_final;
    if (need_lo < spec.x_min || need_hi > spec.x_max) {
      std::ostringstream msg;
      msg << "domain too small: support [" << x_support->lo << ", " << x_support->hi
          << "] needs [" << need_lo << ", " << need_hi << "] for t_final = " << t_final
          << " (light-cone margin " << t_final << " on each side), domain is [" << spec.x_min
          << ", " << spec.x_max << "]";
      throw ValidationError(msg.str());
    }
  }
  return g;
}

PhaseGrid with_steps(PhaseGrid grid, int n_steps) {
  if (n_steps < 0) throw ValidationError("n_steps must be >= 0");
  grid.n_steps = n_steps;
  return grid;
}

}  // namespace kinwave
