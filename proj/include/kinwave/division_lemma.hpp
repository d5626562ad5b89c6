#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinwave/grid.hpp"

namespace kinwave {

// Compactly supported phi(t, x) with exact partials. The support lies in
// the rectangle t_support x x_support.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> phi, dt, dx;
  Interval t_support, x_support;

  double operator()(double t, double x) const { return phi(t, x); }
};

// "centered"  b(t) b(x), b = bump(0, 1, 1)
// "offset"    bump(0.3, 1, 1)(t) * bump(-0.2, 0.8, 1)(x)
// "squared"   b(t)^2 b(x)^2
TestFunction test_function(const std::string& preset);
std::vector<std::string> test_function_presets();

// alpha phi1 + beta phi2.
TestFunction combine(double alpha, const TestFunction& phi1, double beta, const TestFunction& phi2);
// phi(t, -x).
TestFunction mirrored(const TestFunction& phi);

// Adaptive Simpson on [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

inline constexpr double kRayTolerance = 1e-10;

// <m dxY, psi> = 1/2 1/(a+1) int_0^inf psi(t, -t) dt - 1/2 1/(a-1) int_0^inf psi(t, t) dt
// for m(t, x) = x / (a x - t) and Y = 1/2 1_{|x| <= t}. Each ray integral
// runs over the ray's intersection with the support rectangle.
// Throws DomainError unless |a| < 1.
double pair_m_dxY(double a, const std::function<double(double, double)>& psi,
                  const Interval& t_support, const Interval& x_support);
double pair_m_dxY(double a, const TestFunction& phi);

// <T(m dxY), phi> = -<m dxY, T phi>, T = dt + a dx.
double pair_lhs(double a, const TestFunction& phi);

// -phi(0, 0) / (a^2 - 1) + 1/2 int_0^inf (dx phi(t, t) - dx phi(t, -t)) dt.
double pair_rhs(double a, const TestFunction& phi);

struct DivisionRow {
  double a = 0.0;
  std::string phi_preset;
  double lhs = 0.0, rhs = 0.0, abs_err = 0.0;
};

std::vector<double> default_a_sweep();

std::vector<DivisionRow> division_sweep(std::span<const double> a_values,
                                        const std::vector<std::string>& presets);

}  // namespace kinwave
