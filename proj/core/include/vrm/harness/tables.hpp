#pragma once

// Reproduction of the reference tables and of the values quoted beside the
// T/R figures.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vrm::harness {

struct TableOptions {
  double oracle_tol = 1e-10;
  int workers = 1;
};

struct TableCell {
  std::string row;        ///< "E=0.25", "B=6 E=1.5", ...
  std::string quantity;   ///< what was computed ("VRM T", "oracle T", ...)
  std::string reference;  ///< where the comparison value comes from ("table2 ANA")
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  ///< |computed - expected| bound; ignored for informational cells
  bool pass = true;
  bool informational = false;

  double delta() const;
};

struct TableReport {
  std::string id;
  std::string title;
  std::vector<TableCell> cells;
  std::vector<std::string> notes;

  bool pass() const;
};

/// "table1", "table2", "table3", "figures".
std::vector<std::string> table_ids();

/// Throws Error for an unknown id.
TableReport reproduce_table(std::string_view id, const TableOptions& opts = {});

// Parts of the "figures" report, also used by the acceptance suite.
TableReport crossing_report(const TableOptions& opts = {});
TableReport over_barrier_report(const TableOptions& opts = {});

/// Energy where oracle T = R, by scanning the family's default grid for a sign
/// change of T - R and bisecting to 1e-7 hartree. Throws Error when the grid
/// has no crossing.
double crossing_energy(std::string_view family, double oracle_tol = 1e-10);

void print_report(std::ostream& os, const TableReport& report);

}  // namespace vrm::harness
