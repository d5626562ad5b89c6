#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kinwave/coupling.hpp"
#include "kinwave/errors.hpp"
#include "kinwave/transport.hpp"
#include "kinwave/wave.hpp"

using namespace kinwave;

TEST_SUITE("wave") {

TEST_CASE("free waves shift by whole nodes, bit for bit") {
  const PhaseGrid g = build_grid({-6.0, 6.0, -1.0, 1.0, 96, 4}, 2.0);
  InitialData d;
  d.a0 = Profile1D::bump(0.0, 1.0, 1.0);
  d.a1 = Profile1D::bump(0.3, 0.8, 0.5);
  const FieldState f0 = initial_fields(g, d);
  const std::vector<double> zero(g.x_nodes(), 0.0);
  FieldState f = f0;
  const int n = 20;
  for (int s = 0; s < n; ++s) f = step_b_fields(f, zero, zero, g.dt);
  for (int i = 0; i + n < g.x_nodes(); ++i) CHECK(f.b_plus[i] == f0.b_plus[i + n]);
  for (int i = n; i < g.x_nodes(); ++i) CHECK(f.b_minus[i] == f0.b_minus[i - n]);
  CHECK(f.time == doctest::Approx(n * g.dt));
}

TEST_CASE("finite propagation speed") {
  const PhaseGrid g = build_grid({-6.0, 6.0, -1.0, 1.0, 96, 4}, 2.0);
  InitialData d;
  d.a1 = Profile1D::bump(0.0, 1.0, 1.0);
  FieldState f = initial_fields(g, d);
  std::vector<double> j(g.x_nodes(), 0.0), j2(g.x_nodes(), 0.0);
  for (int i = 0; i <= g.nx; ++i) j[i] = Bump{0.0, 1.0, 1.0}(g.x(i));
  for (int s = 0; s < 24; ++s) {
    f = step_b_fields(f, s == 0 ? j : j2, j2, g.dt);
    const double r = 1.0 + f.time;
    for (int i = 0; i <= g.nx; ++i)
      if (std::abs(g.x(i)) >= r + 1e-12) {
        CHECK(f.b_plus[i] == 0.0);
        CHECK(f.b_minus[i] == 0.0);
      }
  }
}

TEST_CASE("constant source in the cone: B = t, A = t^2/2") {
  const PhaseGrid g = build_grid({-4.0, 4.0, -1.0, 1.0, 160, 4}, 1.0);
  std::vector<double> j(g.x_nodes(), 1.0);
  j.front() = j.back() = 0.0;  // boundary nodes carry no current
  FieldState f = initial_fields(g, InitialData{});
  const int steps = 40;
  for (int n = 1; n <= steps; ++n) {
    f = step_b_fields(f, j, j, g.dt);
    const double t = n * g.dt;
    for (int i = n + 1; i + n + 1 < g.x_nodes(); ++i) {
      CHECK(std::abs(f.b_plus[i] - t) <= 1e-12);
      CHECK(std::abs(f.b_minus[i] - t) <= 1e-12);
      CHECK(std::abs(f.a[i] - 0.5 * t * t) <= 1e-12);
    }
  }
}

TEST_CASE("step_b_fields refuses current on the boundary") {
  const PhaseGrid g = build_grid({-4.0, 4.0, -1.0, 1.0, 16, 4}, 1.0);
  std::vector<double> j(g.x_nodes(), 0.0);
  j.back() = 1e-3;
  const FieldState f = initial_fields(g, InitialData{});
  CHECK_THROWS_AS(step_b_fields(f, j, std::vector<double>(g.x_nodes(), 0.0), g.dt),
                  LightConeViolation);
}

namespace {

SourceHistory zero_sources(const PhaseGrid& g, int levels) {
  SourceHistory s(x_axis_of(g), g.dt);
  for (int n = 0; n < levels; ++n) s.push(std::vector<double>(g.x_nodes(), 0.0));
  return s;
}

}  // namespace

TEST_CASE("d'Alembert formula without sources") {
  const PhaseGrid g = build_grid({-6.0, 6.0, -1.0, 1.0, 96, 4}, 2.0);
  InitialData d;
  d.a0 = Profile1D::bump(0.0, 1.0, 1.0);
  const SourceHistory s = zero_sources(g, 17);
  for (int n : {0, 5, 16})
    for (double x : {-1.5, 0.0, 0.4}) {
      const double t = n * g.dt;
      CHECK(dalembert_a(d, s, t, x) ==
            doctest::Approx(0.5 * (d.a0.value(x + t) + d.a0.value(x - t))).epsilon(1e-15));
    }
  CHECK(dalembert_a(d, s, 0.0, 0.3) == d.a0.value(0.3));
  CHECK_THROWS_AS(dalembert_a(d, s, 20 * g.dt, 0.0), DomainError);
}

TEST_CASE("ray representation of dtA without sources") {
  const PhaseGrid g = build_grid({-6.0, 6.0, -1.0, 1.0, 96, 4}, 2.0);
  InitialData d;
  d.a1 = Profile1D::bump(0.2, 1.0, 1.5);
  const SourceHistory s = zero_sources(g, 17);
  for (int n : {0, 7, 16})
    for (double x : {-1.0, 0.05, 0.9}) {
      const double t = n * g.dt;
      CHECK(dt_a_representation(d, s, t, x) ==
            doctest::Approx(0.5 * (d.a1.value(x + t) + d.a1.value(x - t))).epsilon(1e-15));
    }
  CHECK_THROWS_AS(dt_a_representation(d, s, 30 * g.dt, 0.0), DomainError);
}

TEST_CASE("three computations of dtA on a coupled run agree") {
  const PhaseGrid g = kwtest::small_grid(128, 128, 2.0);
  InitialData d = kwtest::desk_data();
  d.a1 = Profile1D::bump(0.0, 1.0, 0.3);
  RunOptions o;
  o.keep_f_history = false;
  const RunResult r = run(g, d, o);
  const auto& s = r.state;
  const double tol = 10.0 * g.dx() * g.dx();
  for (int n : {5, 20, s.step - 1}) {
    for (int i = 10; i < g.nx - 10; i += 7) {
      const double evo = s.field_history.level(n)[i];
      const double paA = dt_a_representation(d, s.source_history, g.time(n), g.x(i));
      const double dal = (dalembert_a(d, s.source_history, g.time(n + 1), g.x(i)) -
                          dalembert_a(d, s.source_history, g.time(n - 1), g.x(i))) /
                         (2.0 * g.dt);
      CHECK(std::abs(evo - paA) <= 1e-13);
      CHECK(std::abs(evo - dal) <= tol);
      CHECK(std::abs(paA - dal) <= tol);
    }
  }
}

TEST_CASE("kernel values and bound") {
  CHECK(kernel_plus(0.0) == -1.0);
  CHECK(kernel_minus(0.0) == 1.0);
  // Closed form |K+-(v)| = (v0 + |v|)^2 / v0 < 4 v0: the factor 2 bound
  // only holds for |v| below (sqrt(2) - 1) v0.
  for (double v = -10.0; v <= 10.0; v += 0.0625) {
    const double v0 = std::sqrt(1.0 + v * v);
    const double closed = (v0 + std::abs(v)) * (v0 + std::abs(v)) / v0;
    CHECK(std::max(std::abs(kernel_plus(v)), std::abs(kernel_minus(v))) ==
          doctest::Approx(closed).epsilon(1e-12));
    CHECK(closed < 4.0 * v0);
  }
  const std::vector<double> narrow{-0.45, -0.2, 0.0, 0.3, 0.45};
  CHECK(kernel_table(narrow).k_plus.size() == narrow.size());
  const std::vector<double> wide{-1.0, 0.0, 1.0};
  CHECK_THROWS_AS(kernel_table(wide), AuditFailure);
}

TEST_CASE("kernels are derivatives of 1/(1 +- v^)") {
  auto fd_error = [](double h) {
    double e = 0.0;
    for (double v = -3.0; v <= 3.0; v += 0.125) {
      const double dp = (1.0 / (1.0 + v_hat(v + h)) - 1.0 / (1.0 + v_hat(v - h))) / (2 * h);
      const double dm = (1.0 / (1.0 - v_hat(v + h)) - 1.0 / (1.0 - v_hat(v - h))) / (2 * h);
      e = std::max({e, std::abs(kernel_plus(v) - dp), std::abs(kernel_minus(v) - dm)});
    }
    return e;
  };
  const double e1 = fd_error(1e-2), e2 = fd_error(5e-3);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("dx dtA representation: trivial cases") {
  const PhaseGrid g = kwtest::small_grid(64, 64, 1.0);
  InitialData zero;
  RunOptions o;
  const RunResult r = run(g, zero, o);
  const auto terms = dxdt_a_representation(r.state.f_history, r.state.field_history, g, zero,
                                           5 * g.dt, 0.3);
  CHECK(terms.total == 0.0);
  InitialData with_field = kwtest::desk_data();
  with_field.a1 = Profile1D::bump(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(dxdt_a_representation(r.state.f_history, r.state.field_history, g,
                                        with_field, 0.0, 0.0),
                  ValidationError);
}

TEST_CASE("dx dtA representation vanishes at t = 0 and tracks the field") {
  const PhaseGrid g = kwtest::small_grid(128, 128, 1.0);
  const InitialData d = kwtest::desk_data();
  const RunResult r = run(g, d, RunOptions{});
  const auto& s = r.state;
  for (double x : {-0.5, 0.0, 0.75}) {
    const auto t0 = dxdt_a_representation(s.f_history, s.field_history, g, d, 0.0, x);
    CHECK(std::abs(t0.total) < 1e-12);
  }
  // Small positive t: compare with centered differences of the ray formula.
  const int n = 4;
  for (int i = 50; i <= 78; i += 4) {
    const double x = g.x(i);
    const auto terms = dxdt_a_representation(s.f_history, s.field_history, g, d, g.time(n), x);
    const double fd = (dt_a_representation(d, s.source_history, g.time(n), g.x(i + 1)) -
                       dt_a_representation(d, s.source_history, g.time(n), g.x(i - 1))) /
                      (2.0 * g.dx());
    CHECK(std::abs(terms.total - fd) <= g.dx());
  }
}

}  // TEST_SUITE
