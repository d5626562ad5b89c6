#include <algorithm>
#include <cmath>

#include "kinwave/interpolate.hpp"
#include "kinwave/kernels.hpp"
#include "kinwave/transport.hpp"

namespace kinwave::kernels {

DependenceCone::DependenceCone(const Profile2D& f0, const FieldHistory& field, int level)
    : xw_(level + 1, 0.0), vw_(level + 1, 0.0) {
  const auto xs = f0.x_support();
  const auto vs = f0.v_support();
  if (!xs || !vs) return;
  empty_ = false;
  xs_ = *xs;
  vs_ = *vs;
  const double dt = field.dt();
  for (int m = 1; m <= level; ++m) {
    vw_[m] = vw_[m - 1] + 1.25 * dt * std::max(field.sup_norm(m - 1), field.sup_norm(m));
    // RK4 stages of step m may sit one more step increment beyond V(t_m).
    const double reach = 2.0 * vw_[m] - vw_[m - 1];
    const double v_max = std::max(std::abs(vs_.lo - reach), std::abs(vs_.hi + reach));
    xw_[m] = xw_[m - 1] + dt * v_hat(v_max) * (1.0 + 1e-12);
  }
}

void fill_analytic_reference(Array2D& out, const PhaseGrid& grid, const Profile2D& f0,
                             const FieldHistory& field, int level) {
  out = Array2D(grid.x_nodes(), grid.v_nodes());
  for (int i = 0; i < grid.x_nodes(); ++i) {
    for (int k = 0; k < grid.v_nodes(); ++k) {
      const auto c = trace(field, grid.x(i), grid.v(k), level, 0, OnExit::Vanish);
      out(i, k) = c ? f0.value(c->x_start, c->v_start) : 0.0;
    }
  }
}

void fill_depth_one_reference(Array2D& out, const Array2D& prev, const PhaseGrid& grid,
                              const Profile2D& f0, const FieldHistory& field, int level,
                              bool clamp) {
  const UniformAxis ax = x_axis_of(grid), av = v_axis_of(grid);
  const DependenceCone cone(f0, field, level);
  const double f_max = f0.sup_abs();
  out = Array2D(grid.x_nodes(), grid.v_nodes());
  for (int i = 0; i < grid.x_nodes(); ++i) {
    for (int k = 0; k < grid.v_nodes(); ++k) {
      if (!cone.reachable(level, grid.x(i), grid.v(k))) continue;
      const auto c = trace(field, grid.x(i), grid.v(k), level, level - 1, OnExit::Vanish);
      if (!c || c->v_start < av.origin || c->v_start > av.last()) continue;
      double f = interpolate(prev, ax, av, c->x_start, c->v_start);
      if (clamp) f = std::clamp(f, 0.0, f_max);
      out(i, k) = f;
    }
  }
}

void moments_reference(const Array2D& f, const PhaseGrid& grid, std::vector<double>& rho,
                       std::vector<double>& j) {
  const int nv = grid.nv;
  const double dv = grid.dv();
  rho.assign(grid.x_nodes(), 0.0);
  j.assign(grid.x_nodes(), 0.0);
  for (int i = 0; i < grid.x_nodes(); ++i) {
    for (int k = 0; k <= nv; ++k) {
      const double w = (k == 0 || k == nv) ? 0.5 * dv : dv;
      rho[i] += w * f(i, k);
      j[i] += w * v_hat(grid.v(k)) * f(i, k);
    }
  }
}

}  // namespace kinwave::kernels
