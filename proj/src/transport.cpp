#include "kinwave/transport.hpp"

#include <algorithm>
#include <sstream>

#include "kinwave/errors.hpp"
#include "kinwave/kernels.hpp"

namespace kinwave {

UniformAxis x_axis_of(const PhaseGrid& grid) { return {grid.x(0), grid.dx(), grid.x_nodes()}; }
UniformAxis v_axis_of(const PhaseGrid& grid) { return {grid.v(0), grid.dv(), grid.v_nodes()}; }

namespace {

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double z : a) m = std::max(m, std::abs(z));
  return m;
}

std::vector<double> average(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
  return out;
}

}  // namespace

void FieldHistory::push(std::vector<double> level) {
  if (!levels_.empty()) {
    midpoints_.push_back(average(levels_.back(), level));
  } else {
    midpoints_.emplace_back();
  }
  sup_.push_back(sup_abs(level));
  levels_.push_back(std::move(level));
}

void FieldHistory::replace_last(std::vector<double> level) {
  const int n = levels() - 1;
  if (n > 0) midpoints_[n] = average(levels_[n - 1], level);
  sup_[n] = sup_abs(level);
  levels_[n] = std::move(level);
}

bool FieldHistory::at_level(int n, double x, double& out) const {
  Stencil s;
  if (!try_interpolation_stencil(axis_, x, s)) return false;
  out = apply_stencil(s, levels_[n]);
  return true;
}

bool FieldHistory::at_midpoint(int n, double x, double& out) const {
  Stencil s;
  if (!try_interpolation_stencil(axis_, x, s)) return false;
  out = apply_stencil(s, midpoints_[n]);
  return true;
}

double FieldHistory::value(double s, double x) const {
  const double u = s / dt_;
  const int last = levels() - 1;
  if (u < -1e-9 || u > last + 1e-9) throw DomainError("field query beyond stored history");
  int n = std::clamp(static_cast<int>(std::floor(u)), 0, std::max(last - 1, 0));
  const double theta = std::clamp(u - n, 0.0, 1.0);
  double lo = 0.0, hi = 0.0;
  if (!at_level(n, x, lo)) throw LightConeViolation("field query outside the grid");
  if (last == 0 || theta == 0.0) return lo;
  at_level(n + 1, x, hi);
  return (1.0 - theta) * lo + theta * hi;
}

int level_of(double t, double dt, int levels) {
  const double u = t / dt;
  const double r = std::nearbyint(u);
  if (std::abs(u - r) > 1e-9 * std::max(1.0, std::abs(u)) || r < 0) {
    std::ostringstream msg;
    msg << "time " << t << " is not a stored time level (dt = " << dt << ")";
    throw DomainError(msg.str());
  }
  if (r > levels - 1) throw DomainError("time beyond the stored history");
  return static_cast<int>(r);
}

bool rk4_step(const FieldHistory& field, int m, int next, double& x, double& v) {
  const double h = (next - m) * field.dt();
  const int mid = std::max(m, next);
  double e1, e2, e3, e4;
  if (!field.at_level(m, x, e1)) return false;
  const double k1x = v_hat(v), k1v = -e1;
  const double x2 = x + 0.5 * h * k1x, v2 = v + 0.5 * h * k1v;
  if (!field.at_midpoint(mid, x2, e2)) return false;
  const double k2x = v_hat(v2), k2v = -e2;
  const double x3 = x + 0.5 * h * k2x, v3 = v + 0.5 * h * k2v;
  if (!field.at_midpoint(mid, x3, e3)) return false;
  const double k3x = v_hat(v3), k3v = -e3;
  const double x4 = x + h * k3x, v4 = v + h * k3v;
  if (!field.at_level(next, x4, e4)) return false;
  const double k4x = v_hat(v4), k4v = -e4;
  x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return true;
}

std::optional<Characteristic> trace(const FieldHistory& field, double x, double v, int from_level,
                                    int to_level, OnExit on_exit) {
  if (from_level < 0 || to_level < 0 || from_level >= field.levels() ||
      to_level >= field.levels())
    throw DomainError("trace: level outside the stored history");

  Characteristic c;
  c.x_end = x;
  c.v_end = v;
  c.t_end = from_level * field.dt();
  c.t_start = to_level * field.dt();

  const int dir = to_level < from_level ? -1 : 1;
  double X = x, V = v;
  bool inside = true;
  for (int m = from_level; m != to_level && inside; m += dir)
    inside = rk4_step(field, m, m + dir, X, V);
  if (inside) {
    const auto& ax = field.axis();
    inside = X >= ax.origin && X <= ax.last();
  }
  if (!inside) {
    if (on_exit == OnExit::Vanish) return std::nullopt;
    std::ostringstream msg;
    msg << "characteristic through (t=" << c.t_end << ", x=" << x << ", v=" << v
        << ") left the grid";
    throw LightConeViolation(msg.str());
  }
  c.x_start = X;
  c.v_start = V;
  return c;
}

Characteristic trace_backward(double t, double x, double v, const FieldHistory& field) {
  const int n = level_of(t, field.dt(), field.levels());
  return *trace(field, x, v, n, 0, OnExit::Throw);
}

double evaluate_f(double t, double x, double v, const InitialData& data,
                  const FieldHistory& field) {
  const int n = level_of(t, field.dt(), field.levels());
  const auto c = trace(field, x, v, n, 0, OnExit::Vanish);
  return c ? data.f0.value(c->x_start, c->v_start) : 0.0;
}

Moments moments(const Array2D& values, const PhaseGrid& grid) {
  Moments m;
  kernels::moments(values, grid, m.rho, m.j);
  return m;
}

Moments moments(const DistributionState& state, const PhaseGrid& grid) {
  return moments(state.values, grid);
}

}  // namespace kinwave
