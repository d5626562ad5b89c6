#pragma once

#include <span>
#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/interpolate.hpp"
#include "kinwave/presets.hpp"
#include "kinwave/state.hpp"

namespace kinwave {

class FieldHistory;

// j(t_n, x_i) for every stored level n (t_n = n dt).
class SourceHistory {
 public:
  SourceHistory() = default;
  SourceHistory(UniformAxis x_axis, double dt) : axis_(x_axis), dt_(dt) {}

  void push(std::vector<double> j) { levels_.push_back(std::move(j)); }
  void replace_last(std::vector<double> j) { levels_.back() = std::move(j); }

  int levels() const { return static_cast<int>(levels_.size()); }
  double dt() const { return dt_; }
  const UniformAxis& axis() const { return axis_; }
  const std::vector<double>& level(int n) const { return levels_[n]; }
  // Cubic in x; 0 outside the grid (nothing propagates in from there).
  double at(int n, double x) const;
  // Integral over [a, b] of the piecewise-linear interpolant of level n.
  double integral(int n, double a, double b) const;

 private:
  UniformAxis axis_;
  double dt_ = 0.0;
  std::vector<std::vector<double>> levels_;
};

// One unit-CFL step of the B+- transport:
//   B+(t+dt, x_i) = B+(t, x_{i+1}) + dt/2 [j(t, x_{i+1}) + j(t+dt, x_i)]
//   B-(t+dt, x_i) = B-(t, x_{i-1}) + dt/2 [j(t, x_{i-1}) + j(t+dt, x_i)]
// with the inflow node of each family set to 0, and
//   A(t+dt) = A(t) + dt/2 [dtA(t) + dtA(t+dt)].
// Throws LightConeViolation if either current is nonzero on a boundary node.
FieldState step_b_fields(const FieldState& state, std::span<const double> j_old,
                         std::span<const double> j_new, double dt);

// The two halves of step_b_fields, for the coupled step which needs the
// field before the new current is known. predict_b_fields applies the
// shift and the j_old half; correct_b_fields adds the j_new half and
// advances A.
FieldState predict_b_fields(const FieldState& state, std::span<const double> j_old, double dt);
void correct_b_fields(FieldState& predicted, const FieldState& previous,
                      std::span<const double> j_new, double dt);

// A(t, x) by direct quadrature of the d'Alembert formula: exact data terms
// plus trapezoid over the backward light-cone triangle. t must be a stored level.
double dalembert_a(const InitialData& data, const SourceHistory& sources, double t, double x);

// dtA(t, x) = 1/2 (A0'(x+t) - A0'(x-t) + A1(x+t) + A1(x-t))
//           + 1/2 int_0^t [j(s, x-(t-s)) + j(s, x+(t-s))] ds, trapezoid in s.
double dt_a_representation(const InitialData& data, const SourceHistory& sources, double t,
                           double x);

// K+-(v) = (v -+ v0) / (1 + v^2 +- v v0), v0 = sqrt(1 + v^2).
// Equals d/dv [1 / (1 +- v^)].
double kernel_plus(double v);
double kernel_minus(double v);

struct KernelTable {
  std::vector<double> v, k_plus, k_minus;
};

// Throws AuditFailure if |K+-(v)| > 2 sqrt(1 + v^2) at some node.
KernelTable kernel_table(std::span<const double> v_nodes);

// dx dtA(t, x) for trivial field data, split into
//   i_a    1/2 sum_+- int int_0^t K+-(v) dtA(t-s, x+-s) f(t-s, x+-s, v) ds dv
//   i_b    -1/2 sum_+- (+-) int f(0, x+-t, v) / (v^ +- 1) dv
//   ii     1/2 sum_+- rho(0, x+-t)
//   local  int v^2 f(t, x, v) dv
// total = i_a + i_b + ii + local (it vanishes at t = 0 as it must).
// `as_printed` is the variant with a -+ on the ray kernel, the opposite sign
// on i_b and a (2 + v^2) local weight, kept for comparison only.
struct RepresentationTerms {
  double i_a = 0.0, i_b = 0.0, ii = 0.0, local_moment = 0.0, total = 0.0;
  double as_printed = 0.0;
};

// f_history[n] holds f at level n; field holds dtA at the same levels.
// Throws ValidationError when the field data is nontrivial or a level is missing.
RepresentationTerms dxdt_a_representation(const std::vector<Array2D>& f_history,
                                          const FieldHistory& field, const PhaseGrid& grid,
                                          const InitialData& data, double t, double x);

}  // namespace kinwave
