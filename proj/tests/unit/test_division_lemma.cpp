#include <doctest.h>

#include <cmath>

#include "kinwave/division_lemma.hpp"
#include "kinwave/errors.hpp"
#include "kinwave/presets.hpp"

using namespace kinwave;

TEST_SUITE("division_lemma") {

TEST_CASE("test functions vanish outside their rectangle") {
  for (const auto& name : test_function_presets()) {
    const TestFunction f = test_function(name);
    CHECK(f(f.t_support.hi + 0.01, f.x_support.center()) == 0.0);
    CHECK(f(f.t_support.center(), f.x_support.lo - 0.01) == 0.0);
    const double t = f.t_support.center() + 0.1, x = f.x_support.center() - 0.05, h = 1e-5;
    CHECK(f.dt(t, x) == doctest::Approx((f(t + h, x) - f(t - h, x)) / (2 * h)).epsilon(1e-7));
    CHECK(f.dx(t, x) == doctest::Approx((f(t, x + h) - f(t, x - h)) / (2 * h)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(test_function("nope"), ValidationError);
}

TEST_CASE("adaptive Simpson") {
  CHECK(adaptive_simpson([](double z) { return z * z; }, 0.0, 3.0, 1e-12) ==
        doctest::Approx(9.0).epsilon(1e-14));
  CHECK(adaptive_simpson([](double z) { return std::sin(z); }, 0.0, M_PI, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("pairing sees only the two rays") {
  auto psi = [](double t, double x) { return Bump{2.5, 0.5, 1.0}(x) * Bump{0.5, 0.5, 1.0}(t); };
  CHECK(pair_m_dxY(0.3, psi, {0.0, 1.0}, {2.0, 3.0}) == 0.0);
}

TEST_CASE("centered bump at a = 0 gives int_0^1 (1 - t^2)^4") {
  const TestFunction b = test_function("centered");
  CHECK(std::abs(pair_m_dxY(0.0, b) - 128.0 / 315.0) <= 1e-10);
}

TEST_CASE("mirroring x flips a") {
  const TestFunction f = test_function("offset");
  for (double a : {-0.7, 0.2, 0.85}) {
    CHECK(pair_m_dxY(a, f) == doctest::Approx(pair_m_dxY(-a, mirrored(f))).epsilon(1e-12));
    CHECK(pair_lhs(a, f) == doctest::Approx(pair_lhs(-a, mirrored(f))).epsilon(1e-12));
  }
}

TEST_CASE("both sides agree on the sweep") {
  const auto rows = division_sweep(default_a_sweep(), test_function_presets());
  CHECK(rows.size() == default_a_sweep().size() * test_function_presets().size());
  for (const auto& r : rows) {
    INFO(r.phi_preset << " a = " << r.a);
    CHECK(r.abs_err <= 1e-8);
    CHECK(r.abs_err == std::abs(r.lhs - r.rhs));
  }
}

TEST_CASE("odd phi has zero right-hand side") {
  const TestFunction f = test_function("offset");
  const TestFunction odd = combine(1.0, f, -1.0, mirrored(f));
  for (double a : {-0.5, 0.0, 0.6}) {
    CHECK(std::abs(pair_rhs(a, odd)) <= 1e-12);
    CHECK(std::abs(pair_lhs(a, odd)) <= 1e-8);
  }
}

TEST_CASE("point term carries 1 / (1 - a^2)") {
  const TestFunction f = test_function("squared");
  const double base = pair_rhs(0.0, f);
  for (double a : {-0.9, 0.5, 0.95})
    CHECK(pair_rhs(a, f) - base == doctest::Approx(1.0 / (1.0 - a * a) - 1.0).epsilon(1e-12));
}

TEST_CASE("pairing is linear") {
  const TestFunction f = test_function("centered"), g = test_function("offset");
  const TestFunction h = combine(2.0, f, -0.5, g);
  for (double a : {-0.4, 0.7})
    CHECK(pair_lhs(a, h) ==
          doctest::Approx(2.0 * pair_lhs(a, f) - 0.5 * pair_lhs(a, g)).epsilon(1e-10));
}

TEST_CASE("|a| >= 1 is rejected") {
  const TestFunction f = test_function("centered");
  CHECK_THROWS_AS(pair_lhs(1.0, f), DomainError);
  CHECK_THROWS_AS(pair_rhs(-1.0, f), DomainError);
  CHECK_THROWS_AS(pair_m_dxY(1.5, f), DomainError);
}

TEST_CASE("blow-up near |a| = 1 is exactly the point term") {
  const TestFunction f = test_function("centered");
  for (double a : {0.99, 0.999, -0.9999}) {
    const double scaled = pair_rhs(a, f) * (1.0 - a * a);
    CHECK(std::abs(scaled - f(0.0, 0.0)) <= 2.0 * (1.0 - a * a));
  }
}

}  // TEST_SUITE
