#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "vrm/harness/sweep.hpp"

namespace vrm::harness {

struct ExportedFiles {
  std::filesystem::path csv;
  std::vector<std::filesystem::path> plots;  ///< one "E value" file per series
  std::filesystem::path debug;               ///< empty unless requested
};

/// CSV header "E,T,R,E_av,unitarity_defect" plus ",T_oracle,R_oracle" when the
/// sweep ran the oracle. Values use %.17g; failed cells are "nan".
void write_csv(std::ostream& os, const SweepResult& sweep);

/// Writes <dir>/<name>.csv and <dir>/<name>_<series>.dat, plus
/// <dir>/<name>_debug.csv when `debug_dump` is set. Creates `dir`.
/// Throws PreconditionError for an empty sweep and Error when a file cannot
/// be written.
ExportedFiles export_series(const SweepResult& sweep, const std::filesystem::path& dir,
                            bool debug_dump = false);

}  // namespace vrm::harness
