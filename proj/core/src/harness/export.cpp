#include "vrm/harness/export.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>

#include "vrm/error.hpp"

namespace vrm::harness {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return std::isnan(v) ? "nan" : fmt::format("{:.17g}", v); }

struct Series {
  const char* name;
  std::function<double(const SweepRow&)> get;
};

std::vector<Series> series(bool oracle) {
  std::vector<Series> s{
      {"T", [](const SweepRow& r) { return r.vrm ? r.vrm->result.T : nan; }},
      {"R", [](const SweepRow& r) { return r.vrm ? r.vrm->result.R : nan; }},
      {"E_av", [](const SweepRow& r) { return r.vrm ? r.vrm->result.E_av : nan; }},
      {"unitarity_defect",
       [](const SweepRow& r) { return r.vrm ? r.vrm->result.unitarity_defect : nan; }},
  };
  if (oracle) {
    s.push_back({"T_oracle", [](const SweepRow& r) { return r.oracle ? r.oracle->T : nan; }});
    s.push_back({"R_oracle", [](const SweepRow& r) { return r.oracle ? r.oracle->R : nan; }});
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

void close_checked(std::ofstream& f, const std::filesystem::path& p) {
  f.close();
  if (!f) throw Error("error while writing " + p.string());
}

}  // namespace

void write_csv(std::ostream& os, const SweepResult& sweep) {
  const auto cols = series(sweep.oracle);
  os << "E";
  for (const auto& c : cols) os << ',' << c.name;
  os << '\n';
  for (const auto& row : sweep.rows) {
    os << num(row.E);
    for (const auto& c : cols) os << ',' << num(c.get(row));
    os << '\n';
  }
}

ExportedFiles export_series(const SweepResult& sweep, const std::filesystem::path& dir,
                            bool debug_dump) {
  if (sweep.rows.empty()) throw PreconditionError("export_series: no rows to export");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());

  ExportedFiles out;
  out.csv = dir / (sweep.name + ".csv");
  {
    auto f = open_out(out.csv);
    write_csv(f, sweep);
    close_checked(f, out.csv);
  }
  for (const auto& s : series(sweep.oracle)) {
    auto path = dir / fmt::format("{}_{}.dat", sweep.name, s.name);
    auto f = open_out(path);
    for (const auto& row : sweep.rows) f << num(row.E) << ' ' << num(s.get(row)) << '\n';
    close_checked(f, path);
    out.plots.push_back(std::move(path));
  }
  if (debug_dump) {
    out.debug = dir / (sweep.name + "_debug.csv");
    auto f = open_out(out.debug);
    write_debug_header(f, sweep.basis_size);
    for (const auto& row : sweep.rows)
      if (row.vrm) write_debug_rows(f, sweep.family, *row.vrm);
    close_checked(f, out.debug);
  }
  return out;
}

}  // namespace vrm::harness
