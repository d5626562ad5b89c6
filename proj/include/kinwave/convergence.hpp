#pragma once

#include <vector>

#include "kinwave/config.hpp"

namespace kinwave {

struct ConvergenceLevel {
  int nx = 0, nv = 0, steps = 0;
  double dx = 0.0;
  double energy_drift = 0.0;  // |E(T) - E(0)| / E(0)
  double mass_drift = 0.0;
  double transport_error = 0.0;  // see ConvergenceReport::exact_reference
};

struct ConvergenceReport {
  double t_end = 0.0;  // shared by all levels
  // true: transport_error is the L_inf distance to f0(x - v^ t, v) (free
  // streaming); false: successive-level differences on the coarse nodes,
  // stored on the finer of the two levels.
  bool exact_reference = false;
  std::vector<ConvergenceLevel> levels;
  std::vector<double> transport_orders;
  std::vector<double> energy_orders;
};

// Runs the configured problem at nx, 2 nx, 4 nx (nv scaled alike). All
// three stop at the coarse grid's last whole step not beyond t_final.
ConvergenceReport convergence_study(const Config& config);

}  // namespace kinwave
