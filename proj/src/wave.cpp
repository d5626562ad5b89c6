#include "kinwave/wave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinwave/errors.hpp"
#include "kinwave/transport.hpp"

namespace kinwave {

double SourceHistory::at(int n, double x) const {
  Stencil s;
  if (!try_interpolation_stencil(axis_, x, s)) return 0.0;
  return apply_stencil(s, levels_[n]);
}

double SourceHistory::integral(int n, double a, double b) const {
  a = std::max(a, axis_.origin);
  b = std::min(b, axis_.last());
  if (!(b > a)) return 0.0;
  const auto& j = levels_[n];
  const double h = axis_.spacing;
  auto value = [&](double y) {
    const double u = (y - axis_.origin) / h;
    int c = std::clamp(static_cast<int>(std::floor(u)), 0, axis_.n - 2);
    const double w = u - c;
    return (1.0 - w) * j[c] + w * j[c + 1];
  };
  // Cells fully inside [a, b] get the plain trapezoid; the partial cells at
  // each end integrate the linear interpolant exactly.
  const double ua = (a - axis_.origin) / h, ub = (b - axis_.origin) / h;
  int first = static_cast<int>(std::ceil(ua - 1e-9));
  int last = static_cast<int>(std::floor(ub + 1e-9));
  if (first > last) return 0.5 * (value(a) + value(b)) * (b - a);
  double acc = 0.0;
  for (int c = first; c < last; ++c) acc += 0.5 * h * (j[c] + j[c + 1]);
  const double xa = axis_.node(first), xb = axis_.node(last);
  if (xa > a) acc += 0.5 * (value(a) + j[first]) * (xa - a);
  if (b > xb) acc += 0.5 * (j[last] + value(b)) * (b - xb);
  return acc;
}

namespace {

void require_quiet_boundary(std::span<const double> j, const char* which) {
  if (j.front() != 0.0 || j.back() != 0.0) {
    std::ostringstream msg;
    msg << "current " << which << " is nonzero on a boundary node (j = " << j.front() << ", "
        << j.back() << "): the light-cone margin is exhausted";
    throw LightConeViolation(msg.str());
  }
}

}  // namespace

FieldState predict_b_fields(const FieldState& state, std::span<const double> j_old, double dt) {
  require_quiet_boundary(j_old, "j(t)");
  const int n = static_cast<int>(state.b_plus.size());
  FieldState out;
  out.b_plus.assign(n, 0.0);
  out.b_minus.assign(n, 0.0);
  out.a = state.a;
  out.time = state.time + dt;
  for (int i = 0; i + 1 < n; ++i) out.b_plus[i] = state.b_plus[i + 1] + 0.5 * dt * j_old[i + 1];
  for (int i = 1; i < n; ++i) out.b_minus[i] = state.b_minus[i - 1] + 0.5 * dt * j_old[i - 1];
  return out;
}

void correct_b_fields(FieldState& predicted, const FieldState& previous,
                      std::span<const double> j_new, double dt) {
  require_quiet_boundary(j_new, "j(t+dt)");
  const int n = static_cast<int>(predicted.b_plus.size());
  for (int i = 0; i + 1 < n; ++i) predicted.b_plus[i] += 0.5 * dt * j_new[i];
  for (int i = 1; i < n; ++i) predicted.b_minus[i] += 0.5 * dt * j_new[i];
  for (int i = 0; i < n; ++i)
    predicted.a[i] = previous.a[i] + 0.5 * dt * (previous.dt_a(i) + predicted.dt_a(i));
}

FieldState step_b_fields(const FieldState& state, std::span<const double> j_old,
                         std::span<const double> j_new, double dt) {
  FieldState out = predict_b_fields(state, j_old, dt);
  correct_b_fields(out, state, j_new, dt);
  return out;
}

double dalembert_a(const InitialData& data, const SourceHistory& sources, double t, double x) {
  const int n = level_of(t, sources.dt(), sources.levels());
  const double tn = n * sources.dt();
  double a = 0.5 * (data.a0.value(x + tn) + data.a0.value(x - tn)) +
             0.5 * (data.a1.antiderivative(x + tn) - data.a1.antiderivative(x - tn));
  double acc = 0.0;
  for (int m = 0; m < n; ++m) {
    const double r = (n - m) * sources.dt();
    const double w = m == 0 ? 0.5 : 1.0;  // level n has an empty interval
    acc += w * sources.integral(m, x - r, x + r);
  }
  return a + 0.5 * sources.dt() * acc;
}

double dt_a_representation(const InitialData& data, const SourceHistory& sources, double t,
                           double x) {
  const int n = level_of(t, sources.dt(), sources.levels());
  const double dt = sources.dt();
  const double tn = n * dt;
  const double e = 0.5 * (data.a0.derivative(x + tn) - data.a0.derivative(x - tn) +
                          data.a1.value(x + tn) + data.a1.value(x - tn));
  double acc = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double r = (n - m) * dt;
    const double w = (m == 0 || m == n) ? 0.5 : 1.0;
    acc += w * (sources.at(m, x - r) + sources.at(m, x + r));
  }
  return e + 0.5 * dt * acc;
}

double kernel_plus(double v) {
  const double v0 = std::sqrt(1.0 + v * v);
  return (v - v0) / (1.0 + v * v + v * v0);
}

double kernel_minus(double v) {
  const double v0 = std::sqrt(1.0 + v * v);
  return (v + v0) / (1.0 + v * v - v * v0);
}

KernelTable kernel_table(std::span<const double> v_nodes) {
  KernelTable t;
  t.v.assign(v_nodes.begin(), v_nodes.end());
  for (double v : v_nodes) {
    const double kp = kernel_plus(v), km = kernel_minus(v);
    const double bound = 2.0 * std::sqrt(1.0 + v * v);
    if (std::abs(kp) > bound || std::abs(km) > bound) {
      std::ostringstream msg;
      msg << "kernel bound |K(v)| <= 2 sqrt(1+v^2) violated at v = " << v;
      throw AuditFailure(msg.str());
    }
    t.k_plus.push_back(kp);
    t.k_minus.push_back(km);
  }
  return t;
}

namespace {

// f(level, y, v_k) for all k, cubic in y; zeros outside the grid.
void column_at(const Array2D& f, const UniformAxis& ax, double y, std::vector<double>& out) {
  out.assign(f.cols(), 0.0);
  Stencil s;
  if (!try_interpolation_stencil(ax, y, s)) return;
  for (int a = 0; a < s.count; ++a) {
    const auto row = f.row(s.first + a);
    for (int k = 0; k < f.cols(); ++k) out[k] += s.w[a] * row[k];
  }
}

double field_at(const FieldHistory& field, int level, double y) {
  double e = 0.0;
  return field.at_level(level, y, e) ? e : 0.0;
}

}  // namespace

RepresentationTerms dxdt_a_representation(const std::vector<Array2D>& f_history,
                                          const FieldHistory& field, const PhaseGrid& grid,
                                          const InitialData& data, double t, double x) {
  if (!data.field_data_trivial())
    throw ValidationError("the dx dtA representation needs A0 = A1 = 0");
  const int n = level_of(t, field.dt(), field.levels());
  if (static_cast<int>(f_history.size()) <= n)
    throw ValidationError("f history does not reach the requested time (raise history_cap_mb)");

  const UniformAxis ax = x_axis_of(grid);
  const int nv = grid.nv;
  const double dt = field.dt(), dv = grid.dv();
  std::vector<double> wv(nv + 1, dv), vh(nv + 1), kp(nv + 1), km(nv + 1);
  wv.front() = wv.back() = 0.5 * dv;
  for (int k = 0; k <= nv; ++k) {
    const double v = grid.v(k);
    vh[k] = v_hat(v);
    kp[k] = kernel_plus(v);
    km[k] = kernel_minus(v);
  }

  RepresentationTerms r;
  double ray_plus = 0.0, ray_minus = 0.0;
  std::vector<double> col;
  for (int m = 0; m <= n && n > 0; ++m) {
    const int level = n - m;
    const double s = m * dt;
    const double ws = (m == 0 || m == n) ? 0.5 * dt : dt;
    const double ep = field_at(field, level, x + s);
    if (ep != 0.0) {
      column_at(f_history[level], ax, x + s, col);
      double acc = 0.0;
      for (int k = 0; k <= nv; ++k) acc += wv[k] * kp[k] * col[k];
      ray_plus += ws * ep * acc;
    }
    const double em = field_at(field, level, x - s);
    if (em != 0.0) {
      column_at(f_history[level], ax, x - s, col);
      double acc = 0.0;
      for (int k = 0; k <= nv; ++k) acc += wv[k] * km[k] * col[k];
      ray_minus += ws * em * acc;
    }
  }
  r.i_a = 0.5 * (ray_plus + ray_minus);

  const double tn = n * dt;
  double trace_plus = 0.0, trace_minus = 0.0, rho_plus = 0.0, rho_minus = 0.0;
  column_at(f_history[0], ax, x + tn, col);
  for (int k = 0; k <= nv; ++k) {
    trace_plus += wv[k] * col[k] / (vh[k] + 1.0);
    rho_plus += wv[k] * col[k];
  }
  column_at(f_history[0], ax, x - tn, col);
  for (int k = 0; k <= nv; ++k) {
    trace_minus += wv[k] * col[k] / (vh[k] - 1.0);
    rho_minus += wv[k] * col[k];
  }
  const double data_trace = 0.5 * (trace_plus - trace_minus);
  r.i_b = -data_trace;
  r.ii = 0.5 * (rho_plus + rho_minus);

  double v2 = 0.0, zeroth = 0.0;
  column_at(f_history[n], ax, x, col);
  for (int k = 0; k <= nv; ++k) {
    const double v = grid.v(k);
    v2 += wv[k] * v * v * col[k];
    zeroth += wv[k] * col[k];
  }
  r.local_moment = v2;
  r.total = r.i_a + r.i_b + r.ii + r.local_moment;
  r.as_printed = 0.5 * (-ray_plus + ray_minus) + data_trace + r.ii + 2.0 * zeroth + v2;
  return r;
}

}  // namespace kinwave
