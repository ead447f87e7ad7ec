#pragma once

// Published reference values, parsed from the YAML data compiled into the
// library (core/data/reference_tables.yaml).

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vrm::harness {

struct ReferenceTable {
  std::string id;
  std::string title;
  std::string profile;
  std::string key;               ///< row label ("B", "E/V0")
  std::vector<double> rows;      ///< key values
  std::vector<double> energies;  ///< hartree; empty when not given (table1)
  std::map<std::string, std::vector<double>> columns;

  /// Throws Error for an unknown column name.
  const std::vector<double>& column(std::string_view name) const;
};

struct Quoted {
  double value = 0.0;
  double energy = 0.0;  ///< 0 when the value is not tied to an energy
  std::string source;
};

struct Band {
  double min_percent = 0.0;
  double max_percent = 0.0;
  std::string source;
};

struct FigureClaims {
  std::map<std::string, Quoted> crossing;        ///< by family
  std::map<std::string, Quoted> over_barrier_T;  ///< by family
  Quoted bell_T_at_2;
  Quoted eckart_peak;
  std::map<std::string, Band> e_av_percent;      ///< by family
};

struct ReferenceData {
  std::map<std::string, ReferenceTable> tables;
  FigureClaims figures;

  /// Throws Error for an unknown id.
  const ReferenceTable& table(std::string_view id) const;
};

ReferenceData parse_reference(std::string_view yaml);

/// The embedded data, parsed once.
const ReferenceData& reference_data();

}  // namespace vrm::harness
