#include "kinwave/picard.hpp"

#include <algorithm>
#include <cmath>

#include "kinwave/errors.hpp"
#include "kinwave/kernels.hpp"
#include "kinwave/transport.hpp"
#include "kinwave/wave.hpp"

namespace kinwave {

PicardProblem picard_problem(const PhaseGrid& base, const InitialData& data, double T,
                             double support_eps) {
  if (!(T > 0.0)) throw ValidationError("Picard horizon T must be > 0");
  const int levels = static_cast<int>(std::ceil(T / base.dt - 1e-9));
  return {with_steps(base, std::max(levels, 1)), data, support_eps};
}

PicardIterate constant_extension(const PicardProblem& p) {
  PicardIterate it;
  const Array2D f0 = sample_initial(p.grid, p.data.f0, p.support_eps).values;
  it.g.assign(p.grid.n_steps + 1, f0);
  it.audit = audit_bt(it, p);
  return it;
}

PicardIterate phi(const PicardIterate& in, const PicardProblem& p) {
  const PhaseGrid& grid = p.grid;
  const int levels = grid.n_steps + 1;
  if (static_cast<int>(in.g.size()) != levels)
    throw ValidationError("Picard iterate does not cover the problem's time levels");

  PicardIterate out;
  SourceHistory src(x_axis_of(grid), grid.dt);
  for (int n = 0; n < levels; ++n) {
    src.push(moments(in.g[n], grid).j);
    out.source_j.push_back(src.level(n));
  }

  FieldHistory field(x_axis_of(grid), grid.dt);
  for (int n = 0; n < levels; ++n) {
    std::vector<double> e(grid.x_nodes());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid.x_nodes(); ++i)
      e[i] = dt_a_representation(p.data, src, grid.time(n), grid.x(i));
    out.source_dt_a.push_back(e);
    field.push(std::move(e));
  }

  out.g.reserve(levels);
  out.g.push_back(sample_initial(grid, p.data.f0, p.support_eps).values);
  for (int n = 1; n < levels; ++n) {
    Array2D f;
    kernels::fill_analytic(f, grid, p.data.f0, field, n);
    out.g.push_back(std::move(f));
  }
  out.audit = audit_bt(out, p);
  return out;
}

double sup_distance(const PicardIterate& a, const PicardIterate& b) {
  double d = 0.0;
  for (std::size_t n = 0; n < a.g.size(); ++n) {
    const auto& x = a.g[n].data();
    const auto& y = b.g[n].data();
    for (std::size_t q = 0; q < x.size(); ++q) d = std::max(d, std::abs(x[q] - y[q]));
  }
  return d;
}

double contraction_ratio(const PicardIterate& g1, const PicardIterate& g2,
                         const PicardProblem& p) {
  const double d = sup_distance(g1, g2);
  if (!(d > 0.0)) throw DomainError("contraction ratio of identical iterates is undefined");
  return sup_distance(phi(g1, p), phi(g2, p)) / d;
}

BtAudit audit_bt(const PicardIterate& it, const PicardProblem& p) {
  const PhaseGrid& grid = p.grid;
  const InitialData& data = p.data;
  const double w = data.f0.w1inf_norm();
  const double R = data.support_radius_x(), M = data.support_radius_v();
  const double thr = p.support_eps * data.f0.sup_abs();
  const double dx = grid.dx(), dv = grid.dv(), dt = grid.dt;

  BtAudit a;
  const Array2D f0 = sample_initial(grid, data.f0, p.support_eps).values;
  for (std::size_t q = 0; q < f0.data().size(); ++q)
    a.h1_initial.value = std::max(a.h1_initial.value, std::abs(it.g[0].data()[q] - f0.data()[q]));
  a.h1_initial.pass = a.h1_initial.value == 0.0;

  a.h2.value = -std::min(R + 1.0, M + 1.0);
  double lip = 0.0, dtg = 0.0;
  for (std::size_t n = 0; n < it.g.size(); ++n) {
    const Array2D& g = it.g[n];
    for (int i = 0; i < g.rows(); ++i) {
      for (int k = 0; k < g.cols(); ++k) {
        const double z = g(i, k);
        a.h1.value = std::max(a.h1.value, std::abs(z));
        if (std::abs(z) > thr) {
          a.h2.value = std::max({a.h2.value, std::abs(grid.x(i)) - (R + 1.0),
                                 std::abs(grid.v(k)) - (M + 1.0)});
        }
        if (i + 1 < g.rows() && k + 1 < g.cols()) {
          const double qx = (g(i + 1, k) - z) / dx, qv = (g(i, k + 1) - z) / dv;
          lip = std::max(lip, std::hypot(qx, qv));
        }
        if (n + 1 < it.g.size()) dtg = std::max(dtg, std::abs(it.g[n + 1](i, k) - z) / dt);
      }
    }
  }
  a.h1.bound = w;
  a.h1.pass = a.h1.value <= w;
  a.h2.bound = 0.0;
  a.h2.pass = a.h2.value < 0.0;

  const double slack = 2.0 * std::max(dx, dv) * w;
  a.h3 = {lip, 3.0 * w + slack, lip <= 3.0 * w + slack};
  const double a1 = data.a1.sup_abs();
  const double h4 = 3.0 * w * (2.0 + data.a0.sup_abs_derivative() + a1) + slack;
  const double h4p = 3.0 * w * (2.0 + data.a0.sup_abs() + a1) + slack;
  a.h4 = {dtg, h4, dtg <= h4};
  a.h4_printed = {dtg, h4p, dtg <= h4p};
  return a;
}

namespace {

double sup_diff(const std::vector<std::vector<double>>& a,
                const std::vector<std::vector<double>>& b) {
  double d = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t i = 0; i < a[n].size(); ++i) d = std::max(d, std::abs(a[n][i] - b[n][i]));
  return d;
}

}  // namespace

PicardResult picard_solve(const PicardProblem& p, int max_iter, double tol) {
  PicardResult r;
  PicardIterate g = constant_extension(p);
  r.initial_audit = g.audit;
  const double stop = tol * p.data.f0.sup_abs();
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int n = 1; n <= max_iter; ++n) {
    PicardIterate next = phi(g, p);
    PicardStep s;
    s.n = n;
    s.distance = sup_distance(next, g);
    next.distance_to_prev = s.distance;
    if (n >= 2 && prev > 0.0) s.ratio = s.distance / prev;
    if (!g.source_j.empty()) {
      const double dj = sup_diff(next.source_j, g.source_j);
      if (dj > 0.0) s.field_lipschitz = sup_diff(next.source_dt_a, g.source_dt_a) / (p.t_end() * dj);
    }
    s.audit = next.audit;
    r.steps.push_back(s);
    prev = s.distance;
    g = std::move(next);
    if (s.distance <= stop) {
      r.converged = true;
      break;
    }
  }
  r.fixed_point = std::move(g);
  return r;
}

ContractionSweep contraction_sweep(const PhaseGrid& base, const InitialData& data, double T_max,
                                   double support_eps) {
  ContractionSweep sweep;
  const int max_levels = std::max(1, static_cast<int>(std::ceil(T_max / base.dt - 1e-9)));
  auto ratio_at = [&](int levels) {
    const PicardProblem p{with_steps(base, levels), data, support_eps};
    const PicardIterate g0 = constant_extension(p);
    const PicardIterate g1 = phi(g0, p);
    SweepPoint pt{p.t_end(), levels, contraction_ratio(g0, g1, p)};
    sweep.points.push_back(pt);
    return pt.ratio;
  };

  int lo = 0, hi = 0;
  for (int L = 1;; L = std::min(2 * L, max_levels)) {
    if (ratio_at(L) > 1.0) {
      hi = L;
      break;
    }
    lo = L;
    if (L == max_levels) break;
  }
  if (hi == 0) return sweep;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (ratio_at(mid) > 1.0) hi = mid;
    else lo = mid;
  }
  sweep.threshold_T = hi * base.dt;
  std::sort(sweep.points.begin(), sweep.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.levels < b.levels; });
  return sweep;
}

}  // namespace kinwave
