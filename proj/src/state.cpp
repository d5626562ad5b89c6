#include "kinwave/state.hpp"

#include <algorithm>
#include <cmath>

namespace kinwave {

SupportBox support_box(const Array2D& values, const PhaseGrid& grid, double threshold) {
  SupportBox box;
  box.i_lo = values.rows();
  box.k_lo = values.cols();
  for (int i = 0; i < values.rows(); ++i) {
    const auto row = values.row(i);
    for (int k = 0; k < values.cols(); ++k) {
      if (std::abs(row[k]) > threshold) {
        box.i_lo = std::min(box.i_lo, i);
        box.i_hi = std::max(box.i_hi, i);
        box.k_lo = std::min(box.k_lo, k);
        box.k_hi = std::max(box.k_hi, k);
      }
    }
  }
  box.empty = box.i_hi < 0;
  if (!box.empty) {
    box.x_lo = grid.x(box.i_lo);
    box.x_hi = grid.x(box.i_hi);
    box.v_lo = grid.v(box.k_lo);
    box.v_hi = grid.v(box.k_hi);
  }
  return box;
}

bool touches_boundary(const SupportBox& box, const PhaseGrid& grid) {
  if (box.empty) return false;
  return box.i_lo == 0 || box.i_hi == grid.nx || box.k_lo == 0 || box.k_hi == grid.nv;
}

DistributionState sample_initial(const PhaseGrid& grid, const Profile2D& f0, double support_eps) {
  DistributionState s;
  s.values = Array2D(grid.x_nodes(), grid.v_nodes());
  for (int i = 0; i < grid.x_nodes(); ++i)
    for (int k = 0; k < grid.v_nodes(); ++k) s.values(i, k) = f0.value(grid.x(i), grid.v(k));
  s.time = 0.0;
  s.box = support_box(s.values, grid, support_eps * f0.sup_abs());
  return s;
}

std::vector<double> FieldState::dt_a() const {
  std::vector<double> out(b_plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (b_plus[i] + b_minus[i]);
  return out;
}

std::vector<double> FieldState::dx_a() const {
  std::vector<double> out(b_plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (b_plus[i] - b_minus[i]);
  return out;
}

FieldState initial_fields(const PhaseGrid& grid, const InitialData& data) {
  const int n = grid.x_nodes();
  FieldState fs;
  fs.b_plus.resize(n);
  fs.b_minus.resize(n);
  fs.a.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    const double a1 = data.a1.value(x);
    const double da0 = data.a0.derivative(x);
    fs.b_plus[i] = a1 + da0;
    fs.b_minus[i] = a1 - da0;
    fs.a[i] = data.a0.value(x);
  }
  return fs;
}

}  // namespace kinwave
