#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/interpolate.hpp"
#include "kinwave/presets.hpp"
#include "kinwave/state.hpp"

namespace kinwave {

// Relativistic velocity v / sqrt(1 + v^2).
inline double v_hat(double v) { return v / std::sqrt(1.0 + v * v); }

UniformAxis x_axis_of(const PhaseGrid& grid);
UniformAxis v_axis_of(const PhaseGrid& grid);

// Stored dtA(t_n, x_i) at every time level, with the level midpoints the
// RK4 stages need. Queries are cubic in x and linear in t.
class FieldHistory {
 public:
  FieldHistory() = default;
  FieldHistory(UniformAxis x_axis, double dt) : axis_(x_axis), dt_(dt) {}

  void push(std::vector<double> level);
  void replace_last(std::vector<double> level);

  int levels() const { return static_cast<int>(levels_.size()); }
  double dt() const { return dt_; }
  const UniformAxis& axis() const { return axis_; }
  const std::vector<double>& level(int n) const { return levels_[n]; }
  // max_i |dtA(t_n, x_i)|
  double sup_norm(int n) const { return sup_[n]; }

  // false when x is outside the grid.
  bool at_level(int n, double x, double& out) const;
  // Midpoint between levels n - 1 and n.
  bool at_midpoint(int n, double x, double& out) const;
  // Throws DomainError beyond the stored history, LightConeViolation outside the grid.
  double value(double s, double x) const;

 private:
  UniformAxis axis_;
  double dt_ = 0.0;
  std::vector<std::vector<double>> levels_;
  std::vector<std::vector<double>> midpoints_;  // midpoints_[n] lies between n-1 and n
  std::vector<double> sup_;
};

struct Characteristic {
  double x_end = 0.0, v_end = 0.0;
  double t_start = 0.0, t_end = 0.0;
  double x_start = 0.0, v_start = 0.0;
};

enum class OnExit { Throw, Vanish };

// One classical RK4 step of the characteristic ODE between adjacent levels
// m and next = m +- 1. Returns false if a stage leaves the grid.
bool rk4_step(const FieldHistory& field, int m, int next, double& x, double& v);

// Classical RK4 with step dt from time level `from_level` to `to_level`
// (either direction) along dX/ds = V^, dV/ds = -dtA(s, X). With
// OnExit::Vanish a path leaving the grid returns nullopt; otherwise it
// raises LightConeViolation.
std::optional<Characteristic> trace(const FieldHistory& field, double x, double v, int from_level,
                                    int to_level, OnExit on_exit = OnExit::Throw);

// Departure point at s = 0 of the characteristic through (t, x, v).
// t must coincide with a stored level.
Characteristic trace_backward(double t, double x, double v, const FieldHistory& field);

// f(t, x, v) = f0(X(0), V(0)). A path that leaves the grid started outside
// supp f0 (the field vanishes beyond the light-cone margin), so it yields 0.
double evaluate_f(double t, double x, double v, const InitialData& data,
                  const FieldHistory& field);

int level_of(double t, double dt, int levels);

struct Moments {
  std::vector<double> rho;
  std::vector<double> j;
};

// Trapezoid over v-nodes. Symmetric node pairs are summed first, so an
// odd integrand on a symmetric grid integrates to exactly 0.
Moments moments(const DistributionState& state, const PhaseGrid& grid);
Moments moments(const Array2D& values, const PhaseGrid& grid);

}  // namespace kinwave
