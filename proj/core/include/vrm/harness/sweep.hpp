#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vrm/harness/config.hpp"
#include "vrm/oracles.hpp"
#include "vrm/solver.hpp"

namespace vrm::harness {

struct SweepRow {
  double E = 0.0;
  std::optional<TunnelingDetail> vrm;     ///< empty when the solve failed
  std::optional<ReferenceResult> oracle;  ///< empty when disabled or failed
  std::string error;                      ///< solver / oracle messages, "" if none
};

struct SweepResult {
  std::string name;
  std::string family;
  bool oracle = false;
  std::size_t basis_size = 0;
  std::vector<SweepRow> rows;  ///< one per grid energy, ascending
  std::size_t failures = 0;    ///< rows with a non-empty error
};

/// Solves every energy of the grid on `config.workers` threads. Per-energy
/// errors are kept in the row; the sweep always returns one row per energy.
SweepResult run_sweep(const RunConfig& config);

}  // namespace vrm::harness
