#include "kinwave/presets.hpp"

#include <algorithm>
#include <cmath>

#include "kinwave/errors.hpp"

namespace kinwave {

namespace {

double quintic_primitive(double u) { return u - 2.0 * u * u * u / 3.0 + u * u * u * u * u / 5.0; }

std::optional<Interval> hull(std::optional<Interval> a, std::optional<Interval> b) {
  if (!a) return b;
  if (!b) return a;
  return Interval{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
}

}  // namespace

double Bump::antiderivative(double z) const {
  const double u = (z - center) / radius;
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return integral();
  return height * radius * (quintic_primitive(u) - quintic_primitive(-1.0));
}

Bump make_bump(double center, double radius, double height) {
  if (!(radius > 0.0)) throw ValidationError("bump radius must be > 0");
  return Bump{center, radius, height};
}

Profile1D Profile1D::bump(double center, double radius, double height) {
  make_bump(center, radius, height);
  return {Profile1DKind::Bump, center, radius, height, 0.0};
}

Profile1D Profile1D::shifted_bump(double center, double radius, double height, double shift) {
  make_bump(center + shift, radius, height);
  return {Profile1DKind::ShiftedBump, center, radius, height, shift};
}

Bump Profile1D::as_bump() const { return Bump{center + shift, radius, height}; }

double Profile1D::value(double z) const { return is_zero() ? 0.0 : as_bump()(z); }
double Profile1D::derivative(double z) const { return is_zero() ? 0.0 : as_bump().derivative(z); }
double Profile1D::antiderivative(double z) const {
  return is_zero() ? 0.0 : as_bump().antiderivative(z);
}

std::optional<Interval> Profile1D::support() const {
  if (is_zero()) return std::nullopt;
  return as_bump().support();
}

double Profile1D::sup_abs() const { return is_zero() ? 0.0 : std::abs(height); }

double Profile1D::sup_abs_derivative() const {
  // max of 4u(1-u^2) on [0,1] is at u = 1/sqrt(3).
  return is_zero() ? 0.0 : 8.0 / (3.0 * std::sqrt(3.0)) * std::abs(height) / radius;
}

std::string Profile1D::preset_name() const {
  switch (kind) {
    case Profile1DKind::Zero: return "zero";
    case Profile1DKind::Bump: return "bump";
    case Profile1DKind::ShiftedBump: return "shifted_bump";
  }
  return "zero";
}

Profile2D Profile2D::bump2d(double x_center, double x_radius, double v_center, double v_radius,
                            double height) {
  make_bump(x_center, x_radius, height);
  make_bump(v_center, v_radius, 1.0);
  return {Profile2DKind::Bump2D, x_center, x_radius, v_center, v_radius, height, 0.0};
}

Profile2D Profile2D::shifted_bump(double x_center, double x_radius, double v_center,
                                  double v_radius, double height, double shift) {
  auto p = bump2d(x_center, x_radius, v_center, v_radius, height);
  p.kind = Profile2DKind::ShiftedBump;
  p.shift = shift;
  return p;
}

Bump Profile2D::x_bump() const { return Bump{x_center + shift, x_radius, height}; }
Bump Profile2D::v_bump() const { return Bump{v_center, v_radius, 1.0}; }

double Profile2D::value(double x, double v) const {
  if (is_zero()) return 0.0;
  const double bv = v_bump()(v);
  return bv == 0.0 ? 0.0 : x_bump()(x) * bv;
}

double Profile2D::dx(double x, double v) const {
  return is_zero() ? 0.0 : x_bump().derivative(x) * v_bump()(v);
}

double Profile2D::dv(double x, double v) const {
  return is_zero() ? 0.0 : x_bump()(x) * v_bump().derivative(v);
}

std::optional<Interval> Profile2D::x_support() const {
  if (is_zero()) return std::nullopt;
  return x_bump().support();
}

std::optional<Interval> Profile2D::v_support() const {
  if (is_zero()) return std::nullopt;
  return v_bump().support();
}

double Profile2D::sup_abs() const { return is_zero() ? 0.0 : std::abs(height); }

double Profile2D::sup_gradient() const {
  if (is_zero()) return 0.0;
  // Both factors depend on the scaled coordinate only; sample the unit square.
  constexpr int n = 2001;
  double best = 0.0;
  for (int a = 0; a < n; ++a) {
    const double u = -1.0 + 2.0 * a / (n - 1);
    const double bu = (1 - u * u) * (1 - u * u);
    const double du = -4.0 * u * (1 - u * u) / x_radius;
    for (int b = 0; b < n; ++b) {
      const double w = -1.0 + 2.0 * b / (n - 1);
      const double bw = (1 - w * w) * (1 - w * w);
      const double dw = -4.0 * w * (1 - w * w) / v_radius;
      const double gx = du * bw, gv = bu * dw;
      best = std::max(best, gx * gx + gv * gv);
    }
  }
  return std::abs(height) * std::sqrt(best);
}

std::string Profile2D::preset_name() const {
  switch (kind) {
    case Profile2DKind::Zero: return "zero";
    case Profile2DKind::Bump2D: return "bump2d";
    case Profile2DKind::ShiftedBump: return "shifted_bump";
  }
  return "zero";
}

double InitialData::support_radius_x() const {
  const auto s = f0.x_support();
  return s ? std::max(std::abs(s->lo), std::abs(s->hi)) : 0.0;
}

double InitialData::support_radius_v() const {
  const auto s = f0.v_support();
  return s ? std::max(std::abs(s->lo), std::abs(s->hi)) : 0.0;
}

std::optional<Interval> InitialData::x_support() const {
  return hull(hull(f0.x_support(), a0.support()), a1.support());
}

}  // namespace kinwave
