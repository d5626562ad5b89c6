#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "kinwave/array2d.hpp"
#include "kinwave/config.hpp"
#include "kinwave/diagnostics.hpp"
#include "kinwave/grid.hpp"
#include "kinwave/presets.hpp"
#include "kinwave/state.hpp"
#include "kinwave/transport.hpp"
#include "kinwave/wave.hpp"

namespace kinwave {

struct RunOptions {
  bool coupling = true;
  TransportMode transport = TransportMode::Analytic;
  bool clamp = false;
  double support_eps = kDefaultSupportEps;
  // Dense f history for the representation audits; levels beyond the cap
  // are dropped and f_history_complete turns false.
  bool keep_f_history = true;
  std::size_t history_cap_bytes = std::size_t{512} << 20;
};

RunOptions options_from(const Config& config);

struct SimulationState {
  PhaseGrid grid;
  InitialData data;
  RunOptions options;

  DistributionState distribution;
  FieldState fields;
  int step = 0;

  Moments moments;  // of distribution
  FieldHistory field_history;  // dtA at levels 0..step
  SourceHistory source_history;  // j at levels 0..step
  std::vector<Array2D> f_history;
  bool f_history_complete = true;

  double time() const { return distribution.time; }
};

SimulationState initialize(const PhaseGrid& grid, const InitialData& data,
                           const RunOptions& options = {});

// Advance by dt:
//   1. B+- shift plus the dt/2 j(t_n) half of the ray integral;
//   2. provisional dtA(t_{n+1}) using j extrapolated linearly to t_{n+1};
//   3. f(t_{n+1}) by backward characteristics under that field;
//   4. j(t_{n+1}) from f(t_{n+1});
//   5. the dt/2 j(t_{n+1}) half completes B+-, and A advances.
// Throws LightConeViolation when the support of f reaches the boundary.
SimulationState step(SimulationState state);

struct RunResult {
  SimulationState state;
  std::vector<DiagnosticsRecord> series;
};

// Called after initialization and after every step.
using StepObserver = std::function<void(const SimulationState&)>;

// n_steps steps of `step`, one diagnostics record per level. Errors are
// rethrown with the failing step attached.
RunResult run(const Config& config, const StepObserver& observer = {});
RunResult run(const PhaseGrid& grid, const InitialData& data, const RunOptions& options,
              const StepObserver& observer = {});

}  // namespace kinwave
