#include "vrm/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace vrm::harness {

namespace {

SweepRow solve_row(const RunConfig& cfg, const BasisSet& basis, const SolveOptions& opts,
                   double E) {
  SweepRow row;
  row.E = E;
  const ScatteringSetup setup = setup_at(cfg, E);
  try {
    row.vrm = solve_tunneling_detail(cfg.profile, setup, basis, opts);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  if (cfg.oracle) {
    try {
      row.oracle = integrate_reference(cfg.profile, setup, cfg.oracle_tol);
    } catch (const std::exception& e) {
      if (!row.error.empty()) row.error += "; ";
      row.error += std::string("oracle: ") + e.what();
    }
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const RunConfig& config) {
  validate(config);
  std::vector<double> energies = resolve(config.energy);
  std::sort(energies.begin(), energies.end());
  const BasisSet basis = basis_of(config);
  const SolveOptions opts = solve_options(config);

  SweepResult out;
  out.name = config.name;
  out.family = std::string(family_name(config.profile));
  out.oracle = config.oracle;
  out.basis_size = basis.size();
  out.rows.resize(energies.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < energies.size(); i = next++)
      out.rows[i] = solve_row(config, basis, opts, energies[i]);
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(config.workers), energies.size());
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
  }

  out.failures = static_cast<std::size_t>(
      std::count_if(out.rows.begin(), out.rows.end(), [](const SweepRow& r) { return !r.error.empty(); }));
  return out;
}

}  // namespace vrm::harness
