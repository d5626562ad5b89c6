#pragma once

#include <optional>
#include <string>

#include "kinwave/grid.hpp"

namespace kinwave {

// height * (1 - ((z - center)/radius)^2)^2 inside the radius, 0 outside.
// C^1 with compact support.
struct Bump {
  double center = 0.0;
  double radius = 1.0;
  double height = 1.0;

  double operator()(double z) const {
    const double u = (z - center) / radius;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    const double s = 1.0 - u * u;
    return height * s * s;
  }
  double derivative(double z) const {
    const double u = (z - center) / radius;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return -4.0 * height * u * (1.0 - u * u) / radius;
  }
  // Integral from -infinity to z.
  double antiderivative(double z) const;
  double integral() const { return height * radius * 16.0 / 15.0; }
  Interval support() const { return {center - radius, center + radius}; }
};

Bump make_bump(double center, double radius, double height);

enum class Profile1DKind { Zero, Bump, ShiftedBump };

// Univariate initial-data descriptor (A0, A1). "shifted_bump" is a bump
// whose center is displaced by `shift`.
struct Profile1D {
  Profile1DKind kind = Profile1DKind::Zero;
  double center = 0.0, radius = 1.0, height = 1.0, shift = 0.0;

  static Profile1D zero() { return {}; }
  static Profile1D bump(double center, double radius, double height);
  static Profile1D shifted_bump(double center, double radius, double height, double shift);

  bool is_zero() const { return kind == Profile1DKind::Zero || height == 0.0; }
  double value(double z) const;
  double derivative(double z) const;
  double antiderivative(double z) const;
  std::optional<Interval> support() const;
  double sup_abs() const;
  double sup_abs_derivative() const;
  std::string preset_name() const;

  bool operator==(const Profile1D&) const = default;

 private:
  Bump as_bump() const;
};

enum class Profile2DKind { Zero, Bump2D, ShiftedBump };

// Bivariate f0 descriptor: product of an x-bump and a v-bump.
// "shifted_bump" displaces the x-center by `shift`.
struct Profile2D {
  Profile2DKind kind = Profile2DKind::Zero;
  double x_center = 0.0, x_radius = 1.0;
  double v_center = 0.0, v_radius = 1.0;
  double height = 1.0, shift = 0.0;

  static Profile2D zero() { return {}; }
  static Profile2D bump2d(double x_center, double x_radius, double v_center, double v_radius,
                          double height);
  static Profile2D shifted_bump(double x_center, double x_radius, double v_center,
                                double v_radius, double height, double shift);

  bool is_zero() const { return kind == Profile2DKind::Zero || height == 0.0; }
  double value(double x, double v) const;
  double dx(double x, double v) const;
  double dv(double x, double v) const;
  std::optional<Interval> x_support() const;
  std::optional<Interval> v_support() const;
  double sup_abs() const;
  // sup |grad f| (Euclidean), by dense sampling of the analytic gradient.
  double sup_gradient() const;
  // ||f||_inf + sup |grad f|.
  double w1inf_norm() const { return sup_abs() + sup_gradient(); }
  std::string preset_name() const;

  bool operator==(const Profile2D&) const = default;

 private:
  Bump x_bump() const;
  Bump v_bump() const;
};

struct InitialData {
  Profile2D f0;
  Profile1D a0;
  Profile1D a1;

  // f0 in C_c((-R, R) x (-M, M)) with the smallest such R, M.
  double support_radius_x() const;
  double support_radius_v() const;
  bool field_data_trivial() const { return a0.is_zero() && a1.is_zero(); }
  // Union of the x-supports of f0, A0, A1 (what the light cone starts from).
  std::optional<Interval> x_support() const;

  bool operator==(const InitialData&) const = default;
};

}  // namespace kinwave
