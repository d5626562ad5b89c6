#pragma once

#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"

namespace kinwave {

// Support threshold relative to ||f0||_inf.
inline constexpr double kDefaultSupportEps = 1e-12;

struct SupportBox {
  bool empty = true;
  double x_lo = 0.0, x_hi = 0.0, v_lo = 0.0, v_hi = 0.0;
  // Node-index bounds; meaningful when !empty.
  int i_lo = 0, i_hi = -1, k_lo = 0, k_hi = -1;
};

// Bounding box of nodes with |f| > threshold.
SupportBox support_box(const Array2D& values, const PhaseGrid& grid, double threshold);

// True when the box touches a boundary node of the grid.
bool touches_boundary(const SupportBox& box, const PhaseGrid& grid);

struct DistributionState {
  Array2D values;  // (x-node, v-node)
  double time = 0.0;
  SupportBox box;
};

DistributionState sample_initial(const PhaseGrid& grid, const Profile2D& f0,
                                 double support_eps = kDefaultSupportEps);

struct FieldState {
  std::vector<double> b_plus;
  std::vector<double> b_minus;
  std::vector<double> a;
  double time = 0.0;

  double dt_a(int i) const { return 0.5 * (b_plus[i] + b_minus[i]); }
  double dx_a(int i) const { return 0.5 * (b_plus[i] - b_minus[i]); }
  std::vector<double> dt_a() const;
  std::vector<double> dx_a() const;
};

// B+- = A1 +- A0', A = A0 on the x-nodes.
FieldState initial_fields(const PhaseGrid& grid, const InitialData& data);

}  // namespace kinwave
