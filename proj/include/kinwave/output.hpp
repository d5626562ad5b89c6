#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "kinwave/config.hpp"
#include "kinwave/convergence.hpp"
#include "kinwave/coupling.hpp"
#include "kinwave/diagnostics.hpp"
#include "kinwave/division_lemma.hpp"
#include "kinwave/picard.hpp"

namespace kinwave {

// %.17g
std::string format_number(double z);

// Creates the directory; ValidationError if that fails or it is not writable.
void prepare_output_directory(const std::filesystem::path& dir);

// Streams fields.csv, moments.csv and f_<step>.csv while a run advances.
// Rows are written at every `every`-th step and at the last step.
class SnapshotWriter {
 public:
  SnapshotWriter(const std::filesystem::path& dir, int every, int last_step, bool write_f);
  void operator()(const SimulationState& state);

 private:
  std::filesystem::path dir_;
  int every_;
  int last_;
  bool write_f_;
  std::ofstream fields_, moments_;
};

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& series);
void write_f_csv(const std::filesystem::path& path, const SimulationState& state);

void write_audit_json(const std::filesystem::path& path, const GronwallAudit& gronwall,
                      const std::optional<DerivativeAudit>& derivative,
                      const std::vector<RepresentationSample>& samples);
void write_picard_json(const std::filesystem::path& path, const PicardProblem& problem,
                       const PicardResult& result, const std::optional<ContractionSweep>& sweep);
void write_convergence_json(const std::filesystem::path& path, const ConvergenceReport& report);
void write_division_json(const std::filesystem::path& path, const std::vector<DivisionRow>& rows);

}  // namespace kinwave
