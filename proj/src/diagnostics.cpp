#include "kinwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "kinwave/coupling.hpp"
#include "kinwave/errors.hpp"
#include "kinwave/transport.hpp"

namespace kinwave {

namespace {

std::vector<double> trapezoid_weights(int n_cells, double h) {
  std::vector<double> w(n_cells + 1, h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double z : a) m = std::max(m, std::abs(z));
  return m;
}

double sup_centered_derivative(const std::vector<double>& a, double h) {
  const int n = static_cast<int>(a.size());
  double m = std::max(std::abs(a[1] - a[0]), std::abs(a[n - 1] - a[n - 2])) / h;
  for (int i = 1; i + 1 < n; ++i) m = std::max(m, std::abs(a[i + 1] - a[i - 1]) / (2.0 * h));
  return m;
}

}  // namespace

EnergyParts energy(const Array2D& f, const FieldState& fields, const PhaseGrid& grid) {
  const auto wx = trapezoid_weights(grid.nx, grid.dx());
  const auto wv = trapezoid_weights(grid.nv, grid.dv());
  std::vector<double> v0(grid.v_nodes());
  for (int k = 0; k < grid.v_nodes(); ++k) v0[k] = std::sqrt(1.0 + grid.v(k) * grid.v(k));

  EnergyParts e;
  for (int i = 0; i < grid.x_nodes(); ++i) {
    const auto row = f.row(i);
    double m = 0.0, kin = 0.0;
    for (int k = 0; k < grid.v_nodes(); ++k) {
      m += wv[k] * row[k];
      kin += wv[k] * v0[k] * row[k];
    }
    e.mass += wx[i] * m;
    e.kinetic += wx[i] * kin;
    const double et = fields.dt_a(i), ex = fields.dx_a(i);
    e.field += wx[i] * 0.5 * (et * et + ex * ex);
  }
  e.total = e.kinetic + e.field;
  return e;
}

EnergyParts energy(const SimulationState& s) {
  return energy(s.distribution.values, s.fields, s.grid);
}

double momentum_support(const Array2D& f, const PhaseGrid& grid, double threshold) {
  double p = 0.0;
  for (int k = 0; k < grid.v_nodes(); ++k) {
    const double vk = std::abs(grid.v(k));
    if (vk <= p) continue;
    for (int i = 0; i < grid.x_nodes(); ++i) {
      if (std::abs(f(i, k)) > threshold) {
        p = vk;
        break;
      }
    }
  }
  return p;
}

double momentum_support(const DistributionState& s, const PhaseGrid& grid, double threshold) {
  return momentum_support(s.values, grid, threshold);
}

double sup_dxdt_a(const FieldState& fields, const PhaseGrid& grid) {
  return sup_centered_derivative(fields.dt_a(), grid.dx());
}

double peak_estimate(const Array2D& f) {
  int bi = 0, bk = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < f.rows(); ++i)
    for (int k = 0; k < f.cols(); ++k)
      if (f(i, k) > best) {
        best = f(i, k);
        bi = i;
        bk = k;
      }
  if (bi == 0 || bk == 0 || bi + 1 == f.rows() || bk + 1 == f.cols()) return best;
  // f ~ b + g.d + d.H.d / 2 in cell units.
  const double gx = 0.5 * (f(bi + 1, bk) - f(bi - 1, bk));
  const double gv = 0.5 * (f(bi, bk + 1) - f(bi, bk - 1));
  const double hxx = f(bi + 1, bk) - 2.0 * best + f(bi - 1, bk);
  const double hvv = f(bi, bk + 1) - 2.0 * best + f(bi, bk - 1);
  const double hxv =
      0.25 * (f(bi + 1, bk + 1) - f(bi + 1, bk - 1) - f(bi - 1, bk + 1) + f(bi - 1, bk - 1));
  const double det = hxx * hvv - hxv * hxv;
  if (!(hxx < 0.0 && det > 0.0)) return best;
  const double dx = -(hvv * gx - hxv * gv) / det;
  const double dv = -(-hxv * gx + hxx * gv) / det;
  if (std::abs(dx) > 1.0 || std::abs(dv) > 1.0) return best;
  return best + 0.5 * (gx * dx + gv * dv);
}

double peak_value(const SimulationState& s) {
  const Array2D& f = s.distribution.values;
  if (s.options.transport != TransportMode::Analytic) return peak_estimate(f);
  const auto& v = f.data();
  const auto best = std::max_element(v.begin(), v.end());
  if (best == v.end() || *best <= 0.0) return v.empty() ? 0.0 : *best;
  const auto q = static_cast<int>(best - v.begin());
  const PhaseGrid& g = s.grid;
  double x = g.x(q / f.cols()), p = g.v(q % f.cols()), top = *best;
  auto at = [&](double xx, double vv) {
    if (!g.x_range().contains(xx) || !g.v_range().contains(vv)) return 0.0;
    return evaluate_f(s.time(), xx, vv, s.data, s.field_history);
  };
  // Compass search over the 8 neighbours; diagonals follow sheared ridges.
  double hx = 0.5 * g.dx(), hv = 0.5 * g.dv();
  while (hx > 1e-9 * g.dx()) {
    bool moved = false;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        if (a == 0 && b == 0) continue;
        const double val = at(x + a * hx, p + b * hv);
        if (val > top) {
          top = val;
          x += a * hx;
          p += b * hv;
          moved = true;
        }
      }
    if (!moved) {
      hx *= 0.5;
      hv *= 0.5;
    }
  }
  return top;
}

DiagnosticsRecord record(const SimulationState& s) {
  DiagnosticsRecord r;
  const auto e = energy(s);
  r.t = s.time();
  r.mass = e.mass;
  r.kinetic = e.kinetic;
  r.field = e.field;
  r.total = e.total;
  r.p_of_t = momentum_support(s.distribution, s.grid, s.options.support_eps * s.data.f0.sup_abs());
  r.sup_dtA = sup_abs(s.fields.dt_a());
  r.sup_dxdtA = sup_dxdt_a(s.fields, s.grid);
  const auto& v = s.distribution.values.data();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  r.undershoot = std::min(0.0, *lo);
  r.max_f = *hi;
  r.sup_j = sup_abs(s.moments.j);
  return r;
}

GronwallConstants gronwall_constants(const InitialData& data, double p0) {
  return {data.a0.sup_abs_derivative() + data.a1.sup_abs(), data.f0.sup_abs(), p0};
}

GronwallAudit gronwall_audit(std::vector<DiagnosticsRecord>& series, const GronwallConstants& c,
                             const PhaseGrid& grid) {
  GronwallAudit a;
  a.constants = c;
  if (series.empty()) return a;
  const auto wv = trapezoid_weights(grid.nv, grid.dv());
  auto quadrature_p = [&](double p) {
    double q = 0.0;
    for (int k = 0; k < grid.v_nodes(); ++k)
      if (std::abs(grid.v(k)) <= p) q += wv[k] * std::abs(v_hat(grid.v(k)));
    return q;
  };
  const double cc = 2.0 * c.f0_sup * std::max(1.0, c.p0 + 1.0);

  double int_j = 0.0, int_e = 0.0;
  a.min_margin_i = a.min_margin_ii = a.min_margin_iii = std::numeric_limits<double>::infinity();
  a.min_margin_ii_2p = a.min_margin_envelope = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < series.size(); ++n) {
    auto& r = series[n];
    if (n > 0) {
      const double h = r.t - series[n - 1].t;
      int_j += 0.5 * h * (r.sup_j + series[n - 1].sup_j);
      int_e += 0.5 * h * (r.sup_dtA + series[n - 1].sup_dtA);
    }
    GronwallStep s;
    s.t = r.t;
    s.lhs_i = r.sup_dtA;
    s.rhs_i = c.data_term + int_j;
    s.lhs_ii = r.sup_j;
    s.rhs_ii = c.f0_sup * quadrature_p(r.p_of_t);
    s.rhs_ii_2p = c.f0_sup * 2.0 * r.p_of_t;
    s.lhs_iii = r.p_of_t;
    s.rhs_iii = c.p0 + int_e + grid.dv();
    s.envelope = (c.data_term + cc) * std::exp(cc * r.t);
    r.margin_i = s.margin_i();
    r.margin_ii = s.margin_ii();
    r.margin_iii = s.margin_iii();
    a.min_margin_i = std::min(a.min_margin_i, s.margin_i());
    a.min_margin_ii = std::min(a.min_margin_ii, s.margin_ii());
    a.min_margin_iii = std::min(a.min_margin_iii, s.margin_iii());
    a.min_margin_ii_2p = std::min(a.min_margin_ii_2p, s.rhs_ii_2p - s.lhs_ii);
    a.min_margin_envelope = std::min(a.min_margin_envelope, s.margin_envelope());
    a.steps.push_back(s);
  }
  return a;
}

DerivativeAudit derivative_transport_audit(const SimulationState& s) {
  const auto& hist = s.f_history;
  if (!s.f_history_complete || static_cast<int>(hist.size()) != s.step + 1)
    throw ValidationError("derivative audit needs the full f history (raise history_cap_mb)");
  const PhaseGrid& g = s.grid;
  const int nx = g.x_nodes(), nv = g.v_nodes();
  const double dx = g.dx(), dv = g.dv(), dt = g.dt;
  const double thr = 1e-3 * s.data.f0.sup_abs();

  auto dxf = [&](const Array2D& f, int i, int k) { return (f(i + 1, k) - f(i - 1, k)) / (2.0 * dx); };
  auto dvf = [&](const Array2D& f, int i, int k) { return (f(i, k + 1) - f(i, k - 1)) / (2.0 * dv); };

  DerivativeAudit a;
  double u0 = 0.0, int_dxe = 0.0, prev_dxe = 0.0;
  for (int n = 0; n <= s.step; ++n) {
    const Array2D& f = hist[n];
    const auto& e = s.field_history.level(n);
    const double sup_dxe = sup_centered_derivative(e, dx);
    if (n > 0) int_dxe += 0.5 * dt * (sup_dxe + prev_dxe);
    prev_dxe = sup_dxe;

    DerivativeLevel L;
    L.t = g.time(n);
    for (int i = 1; i + 1 < nx; ++i)
      for (int k = 1; k + 1 < nv; ++k) {
        L.sup_dxf = std::max(L.sup_dxf, std::abs(dxf(f, i, k)));
        L.sup_dvf = std::max(L.sup_dvf, std::abs(dvf(f, i, k)));
      }
    if (n == 0) u0 = L.sup_dxf + L.sup_dvf;
    L.bound = u0 * std::exp(L.t + int_dxe);
    a.max_derivative_sum = std::max(a.max_derivative_sum, L.sup_dxf + L.sup_dvf);
    if (L.sup_dxf + L.sup_dvf > L.bound * (1.0 + 1e-12)) a.bound_holds = false;

    if (n > 0 && n < s.step) {
      const Array2D& fm = hist[n - 1];
      const Array2D& fp = hist[n + 1];
      for (int i = 2; i + 2 < nx; ++i) {
        const double ei = e[i];
        const double dxe = (e[i + 1] - e[i - 1]) / (2.0 * dx);
        for (int k = 2; k + 2 < nv; ++k) {
          const double v = g.v(k);
          const double vh = v_hat(v);
          const double w = std::pow(1.0 + v * v, -1.5);
          const double fx = dxf(f, i, k), fv = dvf(f, i, k);
          const double t_fx = (dxf(fp, i, k) - dxf(fm, i, k)) / (2.0 * dt);
          const double t_fv = (dvf(fp, i, k) - dvf(fm, i, k)) / (2.0 * dt);
          const double xx = (dxf(f, i + 1, k) - dxf(f, i - 1, k)) / (2.0 * dx);
          const double vx = (dxf(f, i, k + 1) - dxf(f, i, k - 1)) / (2.0 * dv);
          const double xv = (dvf(f, i + 1, k) - dvf(f, i - 1, k)) / (2.0 * dx);
          const double vv = (dvf(f, i, k + 1) - dvf(f, i, k - 1)) / (2.0 * dv);

          const double rx = t_fx + vh * xx - ei * vx - dxe * fv;
          const double rv = t_fv + vh * xv - ei * vv + w * fx;
          const double px = t_fx + vh * xx + ei * vx + dxe * fv;
          const double pv = t_fv + vh * xv + ei * vv + w * fx;
          L.residual_x_all = std::max(L.residual_x_all, std::abs(rx));
          L.residual_v_all = std::max(L.residual_v_all, std::abs(rv));

          bool smooth = true;
          for (int a2 = -2; a2 <= 2 && smooth; ++a2)
            for (int b2 = -2; b2 <= 2 && smooth; ++b2) smooth = f(i + a2, k + b2) > thr;
          for (int a2 = -1; a2 <= 1 && smooth; ++a2)
            smooth = fm(i + a2, k) > thr && fp(i + a2, k) > thr;
          if (!smooth) continue;
          L.residual_x = std::max(L.residual_x, std::abs(rx));
          L.residual_v = std::max(L.residual_v, std::abs(rv));
          L.printed_residual_x = std::max(L.printed_residual_x, std::abs(px));
          L.printed_residual_v = std::max(L.printed_residual_v, std::abs(pv));
          L.scale = std::max({L.scale, std::abs(t_fx), std::abs(t_fv), std::abs(vh * xx),
                              std::abs(vh * xv)});
        }
      }
      a.max_residual = std::max({a.max_residual, L.residual_x, L.residual_v});
      a.max_printed_residual =
          std::max({a.max_printed_residual, L.printed_residual_x, L.printed_residual_v});
    }
    a.levels.push_back(L);
  }
  return a;
}

}  // namespace kinwave

namespace kinwave {

std::vector<RepresentationSample> representation_samples(const SimulationState& s, int n_t,
                                                         int n_x, double x_lo, double x_hi) {
  const PhaseGrid& g = s.grid;
  if (s.step < 2) throw ValidationError("representation samples need at least two steps");
  std::vector<int> levels, nodes;
  for (int a = 0; a < n_t; ++a) {
    const double u = n_t > 1 ? static_cast<double>(a) / (n_t - 1) : 0.0;
    levels.push_back(1 + static_cast<int>(std::lround(u * (s.step - 2))));
  }
  for (int b = 0; b < n_x; ++b) {
    const double u = n_x > 1 ? static_cast<double>(b) / (n_x - 1) : 0.0;
    const double x = x_lo + u * (x_hi - x_lo);
    const int i = static_cast<int>(std::lround((x - g.x(0)) / g.dx()));
    nodes.push_back(std::clamp(i, 1, g.nx - 1));
  }
  std::vector<RepresentationSample> out(levels.size() * nodes.size());
#pragma omp parallel for schedule(dynamic)
  for (int q = 0; q < static_cast<int>(out.size()); ++q) {
    const int n = levels[q / nodes.size()];
    const int i = nodes[q % nodes.size()];
    RepresentationSample r;
    r.t = g.time(n);
    r.x = g.x(i);
    const auto& e = s.field_history.level(n);
    r.evolution = e[i];
    r.fd_dxdtA = (e[i + 1] - e[i - 1]) / (2.0 * g.dx());
    r.paA = dt_a_representation(s.data, s.source_history, r.t, r.x);
    r.dalembert_diff = (dalembert_a(s.data, s.source_history, g.time(n + 1), r.x) -
                        dalembert_a(s.data, s.source_history, g.time(n - 1), r.x)) /
                       (2.0 * g.dt);
    if (s.data.field_data_trivial() && s.f_history_complete)
      r.terms = dxdt_a_representation(s.f_history, s.field_history, g, s.data, r.t, r.x);
    out[q] = r;
  }
  return out;
}

}  // namespace kinwave
