#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"
#include "kinwave/state.hpp"

namespace kinwave {

struct PicardProblem {
  PhaseGrid grid;  // n_steps levels after 0 cover [0, T_eff]
  InitialData data;
  double support_eps = kDefaultSupportEps;

  double t_end() const { return grid.n_steps * grid.dt; }
};

// T is rounded up to whole steps of the base grid.
PicardProblem picard_problem(const PhaseGrid& base, const InitialData& data, double T,
                             double support_eps = kDefaultSupportEps);

struct BtCheck {
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// The four hypotheses defining the trial set, W = ||f0||_inf + sup|grad f0|:
//   h1_initial  max |g(0) - f0| == 0
//   h1          ||g|| <= W
//   h2          supp g inside (-R-1, R+1) x (-M-1, M+1); value is the largest
//               excess max(|x| - (R+1), |v| - (M+1)) over the support, bound 0
//   h3          forward-difference Lipschitz constant <= 3W + 2 max(dx, dv) W
//   h4          max |g(t+dt) - g(t)| / dt <= 3W (2 + ||A0'|| + ||A1||)
//   h4_printed  the same with ||A0|| in place of ||A0'|| (reported only)
struct BtAudit {
  BtCheck h1_initial, h1, h2, h3, h4, h4_printed;
  bool passes() const { return h1_initial.pass && h1.pass && h2.pass && h3.pass && h4.pass; }
};

struct PicardIterate {
  std::vector<Array2D> g;  // levels 0..n_steps
  // Current and field generated by the iterate this one was built from
  // (empty for the starting guess).
  std::vector<std::vector<double>> source_j;
  std::vector<std::vector<double>> source_dt_a;
  BtAudit audit;
  double distance_to_prev = std::numeric_limits<double>::quiet_NaN();
};

// g(t) = f0 for every level.
PicardIterate constant_extension(const PicardProblem& p);

// f = Phi(g): j_g from the moments of g, dtA_g from the ray representation,
// then f by characteristics of dtA_g from f0. Audited.
PicardIterate phi(const PicardIterate& g, const PicardProblem& p);

double sup_distance(const PicardIterate& a, const PicardIterate& b);

// ||Phi(g1) - Phi(g2)|| / ||g1 - g2||; DomainError when g1 == g2.
double contraction_ratio(const PicardIterate& g1, const PicardIterate& g2, const PicardProblem& p);

BtAudit audit_bt(const PicardIterate& g, const PicardProblem& p);

struct PicardStep {
  int n = 0;  // the step builds g_n = Phi(g_{n-1})
  double distance = 0.0;  // ||g_n - g_{n-1}||
  double ratio = std::numeric_limits<double>::quiet_NaN();  // d_n / d_{n-1}
  // ||dtA_{g_{n-1}} - dtA_{g_{n-2}}|| / (T ||j_{g_{n-1}} - j_{g_{n-2}}||)
  double field_lipschitz = std::numeric_limits<double>::quiet_NaN();
  BtAudit audit;
};

struct PicardResult {
  std::vector<PicardStep> steps;
  PicardIterate fixed_point;
  BtAudit initial_audit;
  bool converged = false;
};

// Stops when ||g_n - g_{n-1}|| < tol ||f0|| or after max_iter steps.
PicardResult picard_solve(const PicardProblem& p, int max_iter = 50, double tol = 1e-10);

struct SweepPoint {
  double T = 0.0;
  int levels = 0;
  double ratio = 0.0;  // contraction_ratio(g0, Phi(g0))
};

struct ContractionSweep {
  std::vector<SweepPoint> points;
  std::optional<double> threshold_T;  // first T on the step lattice with ratio > 1
};

// Doubles the number of levels up to T_max, then bisects on whole levels.
ContractionSweep contraction_sweep(const PhaseGrid& base, const InitialData& data, double T_max,
                                   double support_eps = kDefaultSupportEps);

}  // namespace kinwave
