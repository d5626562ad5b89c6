#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "kinwave/config.hpp"
#include "kinwave/coupling.hpp"
#include "kinwave/errors.hpp"
#include "kinwave/output.hpp"

using namespace kinwave;

namespace {

const char* kMinimal =
    "[grid]\n"
    "x_min = -6\nx_max = 6\nv_min = -4\nv_max = 4\nnx = 64\nnv = 64\nt_final = 1\n"
    "[f0]\n"
    "preset = bump2d\n";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("minimal config takes defaults") {
  const Config c = parse_config(kMinimal);
  CHECK(c.mode == RunMode::Evolve);
  CHECK(c.grid.nx == 64);
  CHECK(c.physics.coupling);
  CHECK(c.physics.transport == TransportMode::Analytic);
  CHECK(c.output.directory == "out");
  CHECK(c.output.snapshot_every == 10);
  CHECK(c.picard.T == 0.25);
  CHECK(c.data.f0.kind == Profile2DKind::Bump2D);
  CHECK(c.data.field_data_trivial());
}

TEST_CASE("comments and blank lines") {
  const std::string text = std::string("# header\n; also a comment\n\n") + kMinimal;
  CHECK(parse_config(text) == parse_config(kMinimal));
}

TEST_CASE("duplicate key names both lines") {
  const std::string e = error_of(std::string(kMinimal) + "[grid]\nnx = 32\n");
  CHECK(contains(e, "duplicate key 'nx'"));
  CHECK(contains(e, "lines 6 and 12"));
}

TEST_CASE("negative nx") {
  std::string text = kMinimal;
  text.replace(text.find("nx = 64"), 7, "nx = -3");
  const std::string e = error_of(text);
  CHECK(contains(e, "line 6"));
  CHECK(contains(e, "nx must be >= 2"));
}

TEST_CASE("unknown keys and sections") {
  CHECK(contains(error_of(std::string(kMinimal) + "colour = red\n"), "unknown key 'colour'"));
  CHECK(contains(error_of(std::string(kMinimal) + "[extra]\n"), "unknown section [extra]"));
}

TEST_CASE("syntax errors carry the line number") {
  const std::string e = error_of(std::string(kMinimal) + "[physics]\ncoupling true\n");
  CHECK(contains(e, "line 12"));
  CHECK(contains(e, "expected 'key = value'"));
  CHECK(contains(error_of("[grid\n"), "line 1"));
}

TEST_CASE("type mismatches") {
  CHECK(contains(error_of(std::string(kMinimal) + "[physics]\ncoupling = maybe\n"),
                 "expected true or false"));
  std::string text = kMinimal;
  text.replace(text.find("nv = 64"), 7, "nv = 6.5");
  CHECK(contains(error_of(text), "expected an integer"));
  text = kMinimal;
  text.replace(text.find("t_final = 1"), 11, "t_final = soon");
  CHECK(contains(error_of(text), "expected a number"));
}

TEST_CASE("missing required key") {
  std::string text = kMinimal;
  text.erase(text.find("t_final = 1\n"), 12);
  CHECK(contains(error_of(text), "missing required key 'grid.t_final'"));
  CHECK(contains(error_of("[grid]\nnx = 4\n"), "missing required key"));
}

TEST_CASE("render and parse round trip") {
  Config c = desk_config();
  c.mode = RunMode::Picard;
  c.physics.transport = TransportMode::DepthOne;
  c.physics.clamp = true;
  c.data.a1 = Profile1D::shifted_bump(0.25, 0.75, -0.1, 0.05);
  c.output.directory = "some dir/x";
  c.picard.tol = 1.0 / 3.0;
  CHECK(parse_config(render_config(c)) == c);
  CHECK(parse_config(render_config(desk_config())) == desk_config());
}

TEST_CASE("grid from config checks the light cone") {
  CHECK(make_grid(desk_config()).n_steps == 107);
  Config c = desk_config();
  c.grid.x_min = -4.0;
  c.grid.x_max = 4.0;
  c.grid.t_final = 5.0;
  CHECK_THROWS_AS(make_grid(c), ValidationError);
}

TEST_CASE("number formatting round trips") {
  for (double z : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678})
    CHECK(std::stod(format_number(z)) == z);
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("diagnostics CSV") {
  const auto dir = std::filesystem::temp_directory_path() / "kinwave_io_test";
  prepare_output_directory(dir);
  RunResult r = run(kwtest::small_grid(16, 16, 0.5), kwtest::desk_data(), RunOptions{});
  write_diagnostics_csv(dir / "diagnostics.csv", r.series);
  std::ifstream in(dir / "diagnostics.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,mass,kinetic,field,total,p_of_t,sup_dtA,sup_dxdtA,undershoot,max_f,sup_j,margin_i,"
        "margin_ii,margin_iii");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == static_cast<int>(r.series.size()));
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
