#include <algorithm>
#include <cmath>

#include "kinwave/interpolate.hpp"
#include "kinwave/kernels.hpp"
#include "kinwave/transport.hpp"

namespace kinwave::kernels {

void fill_analytic(Array2D& out, const PhaseGrid& grid, const Profile2D& f0,
                   const FieldHistory& field, int level) {
  out = Array2D(grid.x_nodes(), grid.v_nodes());
  const DependenceCone cone(f0, field, level);
  if (cone.empty()) return;

#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < grid.x_nodes(); ++i) {
    const double xi = grid.x(i);
    if (!cone.reachable_x(level, xi)) continue;
    auto row = out.row(i);
    for (int k = 0; k < grid.v_nodes(); ++k) {
      double X = xi, V = grid.v(k);
      bool alive = cone.reachable(level, X, V);
      for (int m = level; m > 0 && alive; --m)
        alive = rk4_step(field, m, m - 1, X, V) && cone.reachable(m - 1, X, V);
      if (alive) row[k] = f0.value(X, V);
    }
  }
}

void fill_depth_one(Array2D& out, const Array2D& prev, const PhaseGrid& grid,
                    const Profile2D& f0, const FieldHistory& field, int level, bool clamp) {
  const UniformAxis ax = x_axis_of(grid), av = v_axis_of(grid);
  const DependenceCone cone(f0, field, level);
  const double f_max = f0.sup_abs();
  out = Array2D(grid.x_nodes(), grid.v_nodes());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.x_nodes(); ++i) {
    auto row = out.row(i);
    for (int k = 0; k < grid.v_nodes(); ++k) {
      double X = grid.x(i), V = grid.v(k);
      if (!cone.reachable(level, X, V)) continue;
      if (!rk4_step(field, level, level - 1, X, V)) continue;
      if (X < ax.origin || X > ax.last() || V < av.origin || V > av.last()) continue;
      double f = interpolate(prev, ax, av, X, V);
      if (clamp) f = std::clamp(f, 0.0, f_max);
      row[k] = f;
    }
  }
}

void moments(const Array2D& f, const PhaseGrid& grid, std::vector<double>& rho,
             std::vector<double>& j) {
  const int nv = grid.nv;
  const double dv = grid.dv();
  std::vector<double> vh(nv + 1);
  for (int k = 0; k <= nv; ++k) vh[k] = v_hat(grid.v(k));
  rho.assign(grid.x_nodes(), 0.0);
  j.assign(grid.x_nodes(), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.x_nodes(); ++i) {
    const auto row = f.row(i);
    // Pair node k with its mirror nv - k first: on a symmetric grid v^ is
    // exactly odd there, so an even f gives exact zeros pair by pair.
    double r = 0.5 * (row[0] + row[nv]);
    double c = 0.5 * (vh[0] * row[0] + vh[nv] * row[nv]);
    for (int k = 1; 2 * k < nv; ++k) {
      r += row[k] + row[nv - k];
      c += vh[k] * row[k] + vh[nv - k] * row[nv - k];
    }
    if (nv % 2 == 0) {
      r += row[nv / 2];
      c += vh[nv / 2] * row[nv / 2];
    }
    rho[i] = dv * r;
    j[i] = dv * c;
  }
}

}  // namespace kinwave::kernels
