#pragma once

#include <array>
#include <span>

#include "kinwave/array2d.hpp"

namespace kinwave {

// Samples on a uniform 1D lattice origin + i * spacing, i = 0..n-1.
struct UniformAxis {
  double origin = 0.0;
  double spacing = 1.0;
  int n = 0;

  double node(int i) const { return origin + i * spacing; }
  double last() const { return node(n - 1); }
};

// Stencil of a 1D Lagrange interpolation: weights applied to nodes
// first .. first + count - 1.
struct Stencil {
  int first = 0;
  int count = 0;
  std::array<double, 4> w{};
};

// Four-point cubic Lagrange stencil around the query; two-point linear when
// the cubic stencil would leave the lattice; a single node when the query
// sits on one. Throws DomainError outside [origin, last node].
Stencil interpolation_stencil(const UniformAxis& axis, double q);

// Same, but returns false instead of throwing for out-of-range queries.
bool try_interpolation_stencil(const UniformAxis& axis, double q, Stencil& out);

double interpolate(std::span<const double> samples, const UniformAxis& axis, double q);

// Tensor-product interpolation; rows along `ax0`, columns along `ax1`.
double interpolate(const Array2D& samples, const UniformAxis& ax0, const UniformAxis& ax1,
                   double q0, double q1);

inline double apply_stencil(const Stencil& s, std::span<const double> samples) {
  double acc = 0.0;
  for (int k = 0; k < s.count; ++k) acc += s.w[k] * samples[s.first + k];
  return acc;
}

}  // namespace kinwave
