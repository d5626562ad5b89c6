#pragma once

#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"

namespace kinwave {
class FieldHistory;
}

// Grid-fill and reduction kernels. The *_reference variants are the plain
// serial definitions, kept as the oracle for the OpenMP versions.
namespace kinwave::kernels {

// Domain of dependence of supp f0. Going back one step, V moves at most
// 1.25 dt max|dtA| (1.25 bounds the cubic interpolation weights), and X
// at most dt v^(|V|max) with |V|max taken over that velocity envelope.
// Points outside provably start outside supp f0, so f vanishes there.
class DependenceCone {
 public:
  DependenceCone(const Profile2D& f0, const FieldHistory& field, int level);
  bool empty() const { return empty_; }
  bool reachable_x(int m, double x) const {
    return !empty_ && x > xs_.lo - xw_[m] - kSlack && x < xs_.hi + xw_[m] + kSlack;
  }
  bool reachable(int m, double x, double v) const {
    return reachable_x(m, x) && v > vs_.lo - vw_[m] - kSlack && v < vs_.hi + vw_[m] + kSlack;
  }

 private:
  static constexpr double kSlack = 1e-12;
  bool empty_ = true;
  Interval xs_, vs_;
  std::vector<double> xw_, vw_;  // envelope half-widths per level
};

// out(i, k) = f(t_level, x_i, v_k) by tracing every node back to s = 0
// and evaluating f0 there.
void fill_analytic_reference(Array2D& out, const PhaseGrid& grid, const Profile2D& f0,
                             const FieldHistory& field, int level);

// Same values. Nodes whose characteristic leaves the DependenceCone are
// skipped.
void fill_analytic(Array2D& out, const PhaseGrid& grid, const Profile2D& f0,
                   const FieldHistory& field, int level);

// One RK4 step from `level` back to level - 1, then bicubic interpolation
// of `prev` (the samples at level - 1). Departures off the grid read 0, and
// so do nodes outside the DependenceCone: the interpolation stencil would
// otherwise leak O(1e-12) ringing two cells per step, faster than light.
void fill_depth_one_reference(Array2D& out, const Array2D& prev, const PhaseGrid& grid,
                              const Profile2D& f0, const FieldHistory& field, int level,
                              bool clamp);
void fill_depth_one(Array2D& out, const Array2D& prev, const PhaseGrid& grid,
                    const Profile2D& f0, const FieldHistory& field, int level, bool clamp);

// Trapezoid in v of f and v^ f at every x-node.
void moments_reference(const Array2D& f, const PhaseGrid& grid, std::vector<double>& rho,
                       std::vector<double>& j);
void moments(const Array2D& f, const PhaseGrid& grid, std::vector<double>& rho,
             std::vector<double>& j);

}  // namespace kinwave::kernels
