#include "kinwave/division_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kinwave/errors.hpp"
#include "kinwave/presets.hpp"

namespace kinwave {

namespace {

TestFunction product(std::string name, Bump bt, Bump bx, bool squared) {
  TestFunction f;
  f.name = std::move(name);
  if (squared) {
    f.phi = [bt, bx](double t, double x) {
      const double u = bt(t), w = bx(x);
      return u * u * w * w;
    };
    f.dt = [bt, bx](double t, double x) {
      const double w = bx(x);
      return 2.0 * bt(t) * bt.derivative(t) * w * w;
    };
    f.dx = [bt, bx](double t, double x) {
      const double u = bt(t);
      return u * u * 2.0 * bx(x) * bx.derivative(x);
    };
  } else {
    f.phi = [bt, bx](double t, double x) { return bt(t) * bx(x); };
    f.dt = [bt, bx](double t, double x) { return bt.derivative(t) * bx(x); };
    f.dx = [bt, bx](double t, double x) { return bt(t) * bx.derivative(x); };
  }
  f.t_support = bt.support();
  f.x_support = bx.support();
  return f;
}

double simpson_step(const std::function<double(double)>& f, double a, double fa, double m,
                    double fm, double b, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

// int_0^inf psi(t, sign * t) dt over the part of the ray inside the rectangle.
double ray_integral(const std::function<double(double, double)>& psi, int sign,
                    const Interval& ts, const Interval& xs) {
  double lo = std::max(0.0, ts.lo), hi = ts.hi;
  // x = sign t in [xs.lo, xs.hi]
  if (sign > 0) {
    lo = std::max(lo, xs.lo);
    hi = std::min(hi, xs.hi);
  } else {
    lo = std::max(lo, -xs.hi);
    hi = std::min(hi, -xs.lo);
  }
  if (!(hi > lo)) return 0.0;
  return adaptive_simpson([&](double t) { return psi(t, sign * t); }, lo, hi, kRayTolerance);
}

void check_a(double a) {
  if (!(std::abs(a) < 1.0)) {
    std::ostringstream msg;
    msg << "a = " << a << " is outside (-1, 1)";
    throw DomainError(msg.str());
  }
}

}  // namespace

TestFunction test_function(const std::string& preset) {
  if (preset == "centered") return product(preset, Bump{0.0, 1.0, 1.0}, Bump{0.0, 1.0, 1.0}, false);
  if (preset == "offset") return product(preset, Bump{0.3, 1.0, 1.0}, Bump{-0.2, 0.8, 1.0}, false);
  if (preset == "squared") return product(preset, Bump{0.0, 1.0, 1.0}, Bump{0.0, 1.0, 1.0}, true);
  throw ValidationError("unknown test function preset '" + preset +
                        "' (expected centered, offset or squared)");
}

std::vector<std::string> test_function_presets() { return {"centered", "offset", "squared"}; }

TestFunction combine(double alpha, const TestFunction& p, double beta, const TestFunction& q) {
  TestFunction f;
  f.name = p.name + "+" + q.name;
  f.phi = [=](double t, double x) { return alpha * p.phi(t, x) + beta * q.phi(t, x); };
  f.dt = [=](double t, double x) { return alpha * p.dt(t, x) + beta * q.dt(t, x); };
  f.dx = [=](double t, double x) { return alpha * p.dx(t, x) + beta * q.dx(t, x); };
  f.t_support = {std::min(p.t_support.lo, q.t_support.lo), std::max(p.t_support.hi, q.t_support.hi)};
  f.x_support = {std::min(p.x_support.lo, q.x_support.lo), std::max(p.x_support.hi, q.x_support.hi)};
  return f;
}

TestFunction mirrored(const TestFunction& p) {
  TestFunction f;
  f.name = p.name + "(-x)";
  f.phi = [p](double t, double x) { return p.phi(t, -x); };
  f.dt = [p](double t, double x) { return p.dt(t, -x); };
  f.dx = [p](double t, double x) { return -p.dx(t, -x); };
  f.t_support = p.t_support;
  f.x_support = {-p.x_support.hi, -p.x_support.lo};
  return f;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, m, fm, b, fb, whole, tol, 50);
}

double pair_m_dxY(double a, const std::function<double(double, double)>& psi,
                  const Interval& ts, const Interval& xs) {
  check_a(a);
  const double minus_ray = ray_integral(psi, -1, ts, xs);
  const double plus_ray = ray_integral(psi, +1, ts, xs);
  return 0.5 / (a + 1.0) * minus_ray - 0.5 / (a - 1.0) * plus_ray;
}

double pair_m_dxY(double a, const TestFunction& phi) {
  return pair_m_dxY(a, phi.phi, phi.t_support, phi.x_support);
}

double pair_lhs(double a, const TestFunction& phi) {
  check_a(a);
  auto t_phi = [&](double t, double x) { return phi.dt(t, x) + a * phi.dx(t, x); };
  return -pair_m_dxY(a, t_phi, phi.t_support, phi.x_support);
}

double pair_rhs(double a, const TestFunction& phi) {
  check_a(a);
  const double delta = -phi.phi(0.0, 0.0) / (a * a - 1.0);
  const double rays = ray_integral(phi.dx, +1, phi.t_support, phi.x_support) -
                      ray_integral(phi.dx, -1, phi.t_support, phi.x_support);
  return delta + 0.5 * rays;
}

std::vector<double> default_a_sweep() { return {-0.9, -0.5, 0.0, 0.5, 0.9}; }

std::vector<DivisionRow> division_sweep(std::span<const double> a_values,
                                        const std::vector<std::string>& presets) {
  std::vector<DivisionRow> rows;
  for (const auto& name : presets) {
    const TestFunction phi = test_function(name);
    for (double a : a_values) {
      DivisionRow r;
      r.a = a;
      r.phi_preset = name;
      r.lhs = pair_lhs(a, phi);
      r.rhs = pair_rhs(a, phi);
      r.abs_err = std::abs(r.lhs - r.rhs);
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace kinwave
