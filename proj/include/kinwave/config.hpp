#pragma once

#include <string>
#include <string_view>

#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"

namespace kinwave {

enum class RunMode { Evolve, Picard, DivisionLemma, Convergence };
enum class TransportMode { Analytic, DepthOne };

struct GridBlock {
  double x_min = 0.0, x_max = 0.0, v_min = 0.0, v_max = 0.0;
  int nx = 0, nv = 0;
  double t_final = 0.0;
  bool operator==(const GridBlock&) const = default;
};

struct PhysicsBlock {
  bool coupling = true;  // false: the field ignores j (free streaming / free waves)
  TransportMode transport = TransportMode::Analytic;
  bool clamp = false;  // depth-one mode only: clamp interpolated f to [0, max f0]
  bool operator==(const PhysicsBlock&) const = default;
};

struct OutputBlock {
  std::string directory = "out";
  int snapshot_every = 10;  // 0 disables f_<step>.csv snapshots
  bool csv = true;
  bool json = true;
  double history_cap_mb = 512.0;
  bool operator==(const OutputBlock&) const = default;
};

struct PicardBlock {
  double T = 0.25;
  int max_iter = 50;
  double tol = 1e-10;  // relative to ||f0||_inf
  double sweep_T_max = 0.0;  // > 0 enables the contraction-threshold sweep
  bool operator==(const PicardBlock&) const = default;
};

struct ToleranceBlock {
  double support_eps = 1e-12;
  bool operator==(const ToleranceBlock&) const = default;
};

struct Config {
  RunMode mode = RunMode::Evolve;
  GridBlock grid;
  PhysicsBlock physics;
  InitialData data;
  OutputBlock output;
  PicardBlock picard;
  ToleranceBlock tolerances;
  bool operator==(const Config&) const = default;
};

// Strict INI-style parser: [section] headers, `key = value` lines, '#'
// comments. Unknown sections or keys, duplicates, malformed values and
// missing required keys raise ConfigError with the offending line.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

// Renders every key; parse_config(render_config(c)) == c.
std::string render_config(const Config& config);

// Grid of the configured run (margin-checked against the data support).
PhaseGrid make_grid(const Config& config);

std::string to_string(RunMode mode);
std::string to_string(TransportMode mode);

// The reference scenario: x in [-6, 6], v in [-4, 4], 256 x 256 cells,
// t_final = 5, f0 = bump2d(x: 0, 1; v: 0.5, 1; height 1), A0 = A1 = 0.
Config desk_config();

}  // namespace kinwave
