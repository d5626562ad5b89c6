#include "kinwave/interpolate.hpp"

#include <cmath>
#include <sstream>

#include "kinwave/errors.hpp"

namespace kinwave {

bool try_interpolation_stencil(const UniformAxis& axis, double q, Stencil& out) {
  const double s = (q - axis.origin) / axis.spacing;
  const double last = axis.n - 1;
  const double snap = 1e-12 * std::max(1.0, std::abs(s));
  if (!(s >= -snap && s <= last + snap)) return false;

  const double r = std::nearbyint(s);
  if (std::abs(s - r) <= snap) {
    out.first = static_cast<int>(r);
    out.count = 1;
    out.w = {1.0, 0.0, 0.0, 0.0};
    return true;
  }

  int i = static_cast<int>(std::floor(s));
  const double w = s - i;
  if (i >= 1 && i <= axis.n - 3) {
    out.first = i - 1;
    out.count = 4;
    out.w = {-w * (w - 1.0) * (w - 2.0) / 6.0, (w + 1.0) * (w - 1.0) * (w - 2.0) / 2.0,
             -(w + 1.0) * w * (w - 2.0) / 2.0, (w + 1.0) * w * (w - 1.0) / 6.0};
    return true;
  }
  out.first = i;
  out.count = 2;
  out.w = {1.0 - w, w, 0.0, 0.0};
  return true;
}

Stencil interpolation_stencil(const UniformAxis& axis, double q) {
  Stencil s;
  if (!try_interpolation_stencil(axis, q, s)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "interpolation query " << q << " outside [" << axis.origin << ", " << axis.last()
        << "]";
    throw DomainError(msg.str());
  }
  return s;
}

double interpolate(std::span<const double> samples, const UniformAxis& axis, double q) {
  return apply_stencil(interpolation_stencil(axis, q), samples);
}

double interpolate(const Array2D& samples, const UniformAxis& ax0, const UniformAxis& ax1,
                   double q0, double q1) {
  const Stencil s0 = interpolation_stencil(ax0, q0);
  const Stencil s1 = interpolation_stencil(ax1, q1);
  double acc = 0.0;
  for (int a = 0; a < s0.count; ++a) acc += s0.w[a] * apply_stencil(s1, samples.row(s0.first + a));
  return acc;
}

}  // namespace kinwave
