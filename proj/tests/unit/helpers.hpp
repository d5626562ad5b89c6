#pragma once

#include <cmath>
#include <vector>

#include "kinwave/coupling.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"

namespace kwtest {

inline kinwave::InitialData desk_data() {
  kinwave::InitialData d;
  d.f0 = kinwave::Profile2D::bump2d(0.0, 1.0, 0.5, 1.0, 1.0);
  return d;
}

// Desk geometry at a lower resolution and a shorter horizon.
inline kinwave::PhaseGrid small_grid(int nx = 64, int nv = 64, double t_final = 1.0) {
  return kinwave::build_grid({-6.0, 6.0, -4.0, 4.0, nx, nv}, t_final);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace kwtest
