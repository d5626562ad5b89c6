#pragma once

#include <limits>
#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"
#include "kinwave/state.hpp"
#include "kinwave/wave.hpp"

namespace kinwave {

struct SimulationState;

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double kinetic = 0.0;  // int int sqrt(1 + v^2) f
  double field = 0.0;  // 1/2 int (dtA^2 + dxA^2)
  double total = 0.0;
  double p_of_t = 0.0;
  double sup_dtA = 0.0;
  double sup_dxdtA = 0.0;
  double undershoot = 0.0;  // min(0, min f)
  double max_f = 0.0;
  double sup_j = 0.0;
  // Filled by gronwall_audit; NaN until then.
  double margin_i = std::numeric_limits<double>::quiet_NaN();
  double margin_ii = std::numeric_limits<double>::quiet_NaN();
  double margin_iii = std::numeric_limits<double>::quiet_NaN();
};

struct EnergyParts {
  double kinetic = 0.0, field = 0.0, total = 0.0, mass = 0.0;
};

// Trapezoid in x and v.
EnergyParts energy(const Array2D& f, const FieldState& fields, const PhaseGrid& grid);
EnergyParts energy(const SimulationState& state);

// Largest |v_k| whose column holds a sample above `threshold`; 0 if none.
double momentum_support(const Array2D& f, const PhaseGrid& grid, double threshold);
double momentum_support(const DistributionState& state, const PhaseGrid& grid, double threshold);

// max_i |dx dtA| by centered differences of (B+ + B-)/2 (one-sided at the ends).
double sup_dxdt_a(const FieldState& fields, const PhaseGrid& grid);

// Peak of f from a quadratic fit through the 3x3 block around the largest
// sample; the raw largest sample if the fit has no interior maximum.
double peak_estimate(const Array2D& f);

// max f(t, .) of the computed solution between the nodes. Analytic mode:
// pattern search on evaluate_f (f at any point via its characteristic)
// starting from the largest sample. Depth-one mode: peak_estimate.
double peak_value(const SimulationState& state);

DiagnosticsRecord record(const SimulationState& state);

struct GronwallConstants {
  double data_term = 0.0;  // ||A0'|| + ||A1||
  double f0_sup = 0.0;
  double p0 = 0.0;
};

GronwallConstants gronwall_constants(const InitialData& data, double p0);

// Per recorded step:
//  (i)   ||dtA(t)|| <= D + int_0^t ||j||
//  (ii)  ||j(t)|| <= ||f0|| * sum_{|v_k| <= P(t)} w_k |v^_k|   (quadrature form of
//        ||f0|| P(t)); the cruder ||f0|| * 2P(t) is reported too
//  (iii) P(t) <= P(0) + int_0^t ||dtA|| + dv
//  env   ||dtA(t)|| <= (D + c) e^{c t},  c = 2 ||f0|| max(1, P(0) + 1)
// Time integrals are trapezoid over the series. Margins are rhs - lhs.
struct GronwallStep {
  double t = 0.0;
  double lhs_i = 0.0, rhs_i = 0.0;
  double lhs_ii = 0.0, rhs_ii = 0.0, rhs_ii_2p = 0.0;
  double lhs_iii = 0.0, rhs_iii = 0.0;
  double envelope = 0.0;
  double margin_i() const { return rhs_i - lhs_i; }
  double margin_ii() const { return rhs_ii - lhs_ii; }
  double margin_iii() const { return rhs_iii - lhs_iii; }
  double margin_envelope() const { return envelope - lhs_i; }
};

struct GronwallAudit {
  GronwallConstants constants;
  std::vector<GronwallStep> steps;
  double min_margin_i = 0.0, min_margin_ii = 0.0, min_margin_iii = 0.0;
  double min_margin_ii_2p = 0.0, min_margin_envelope = 0.0;
  bool holds(double slack) const {
    return min_margin_i >= -slack && min_margin_ii >= -slack && min_margin_iii >= -slack;
  }
};

// Also writes the three margins back into `series`.
GronwallAudit gronwall_audit(std::vector<DiagnosticsRecord>& series,
                             const GronwallConstants& constants, const PhaseGrid& grid);

// Discrete check of the transport system satisfied by (dx f, dv f):
//   L (dx f) = dx dtA * dv f,   L (dv f) = -(1 + v^2)^{-3/2} dx f,
// L = dt + v^ dx - dtA dv, all derivatives centered differences of the
// stored samples. Residuals are split into interior nodes (every stencil
// sample above 1e-3 ||f0||, where f is smooth) and all nodes.
struct DerivativeLevel {
  double t = 0.0;
  double sup_dxf = 0.0, sup_dvf = 0.0;
  double bound = 0.0;  // u(0) exp(int_0^t (1 + ||dx dtA||))
  double residual_x = 0.0, residual_v = 0.0;  // interior
  double residual_x_all = 0.0, residual_v_all = 0.0;
  double printed_residual_x = 0.0, printed_residual_v = 0.0;  // opposite force sign
  double scale = 0.0;  // sup of the terms entering the residual
};

struct DerivativeAudit {
  std::vector<DerivativeLevel> levels;
  double max_derivative_sum = 0.0;
  double max_residual = 0.0;  // interior, over all levels
  double max_printed_residual = 0.0;
  bool bound_holds = true;
};

// Needs the dense f history (throws ValidationError otherwise).
DerivativeAudit derivative_transport_audit(const SimulationState& state);

// dtA three ways plus the dx dtA representation at one (t, x) of a run.
struct RepresentationSample {
  double t = 0.0, x = 0.0;
  double evolution = 0.0;  // (B+ + B-)/2 from the time stepping
  double paA = 0.0;  // ray quadrature
  double dalembert_diff = 0.0;  // centered time difference of the d'Alembert A
  double fd_dxdtA = 0.0;  // centered x difference of the evolved dtA
  RepresentationTerms terms;
};

// n_t levels spread over 1 .. step-1 and the x-nodes nearest to n_x
// equispaced points of [x_lo, x_hi].
std::vector<RepresentationSample> representation_samples(const SimulationState& state,
                                                         int n_t = 10, int n_x = 10,
                                                         double x_lo = -5.0, double x_hi = 5.0);

}  // namespace kinwave
