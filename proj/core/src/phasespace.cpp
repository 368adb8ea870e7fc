#include "dimer/phasespace.hpp"

#include <cmath>

#include "dimer/parallel.hpp"
#include "dimer/spectra.hpp"

namespace dimer {

ScanField scan_observable(const DimerParams& params, const GridSpec& grid, double t_final,
                          Observable observable, int n_threads) {
  if (grid.n_z() < 2 || grid.n_phi() < 2) throw Error("scan grid needs at least 2 nodes per axis");
  const EigenDecomposition eig = diagonalize(params);

  ScanField field;
  field.grid = grid;
  field.values.resize(grid.n_z(), grid.n_phi());
  field.observable = observable == Observable::condensate_fraction ? "condensate_fraction" : "epr";
  field.evolution_time = t_final;

  parallel_for(grid.size(), n_threads, [&](int idx) {
    const int i = idx / grid.n_phi();
    const int j = idx % grid.n_phi();
    const StateVector psi0 =
        coherent_state(params, PhasePoint(grid.z_nodes[i], grid.phi_nodes[j]));
    const StateVector psi = evolve_spectral(psi0, eig, t_final);
    if (observable == Observable::condensate_fraction) {
      field.values(i, j) = condensate_fraction(spdm(psi), params.n_atoms);
    } else {
      field.values(i, j) = epr(psi);
    }
  });
  return field;
}

FractionSeries entangled_fraction(const DimerParams& params, const GridSpec& sampler,
                                  const std::vector<double>& t_grid,
                                  const std::optional<LossSchedule>& schedule,
                                  const std::optional<JumpConfig>& config, int n_threads) {
  if (sampler.size() < 100) throw Error("entangled fraction needs at least 100 samples");
  const int n_samples = sampler.size();
  const std::size_t nt = t_grid.size();

  // entangled[sample * nt + k]
  std::vector<char> entangled(static_cast<std::size_t>(n_samples) * nt, 0);

  const bool dissipative = schedule.has_value() && schedule->any_loss();
  if (!dissipative) {
    const EigenDecomposition eig = diagonalize(params);
    parallel_for(n_samples, n_threads, [&](int s) {
      const int i = s / sampler.n_phi();
      const int j = s % sampler.n_phi();
      const StateVector psi0 =
          coherent_state(params, PhasePoint(sampler.z_nodes[i], sampler.phi_nodes[j]));
      for (std::size_t k = 0; k < nt; ++k) {
        const StateVector psi = evolve_spectral(psi0, eig, t_grid[k]);
        entangled[s * nt + k] = epr(psi) > 0.0 ? 1 : 0;
      }
    });
  } else {
    const LossSchedule& sched = *schedule;
    JumpConfig cfg = config.value_or(JumpConfig{});
    parallel_for(n_samples, n_threads, [&](int s) {
      const int i = s / sampler.n_phi();
      const int j = s % sampler.n_phi();
      JumpConfig local = cfg;
      // decorrelate samples while keeping (seed, sample, trajectory) fixed
      local.rng_seed = cfg.rng_seed ^ (0x9E3779B97F4A7C15ull * (s + 1));
      const StateVector psi0 =
          coherent_state(params, PhasePoint(sampler.z_nodes[i], sampler.phi_nodes[j]));
      const EnsembleSeries es = run_ensemble(psi0, params, sched, local, t_grid, 1);
      const auto epr_series = es.epr();
      for (std::size_t k = 0; k < nt; ++k) {
        entangled[s * nt + k] = epr_series[k] > 0.0 ? 1 : 0;
      }
    });
  }

  FractionSeries fs;
  fs.times = t_grid;
  fs.sample_count = n_samples;
  fs.fraction.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    int count = 0;
    for (int s = 0; s < n_samples; ++s) count += entangled[s * nt + k];
    fs.fraction[k] = double(count) / n_samples;
  }
  return fs;
}

ScanField husimi_field(const StateVector& state, const GridSpec& grid, int n_threads) {
  const DimerParams params(state.n_atoms(), 1.0, 0.0);
  ScanField field;
  field.grid = grid;
  field.values.resize(grid.n_z(), grid.n_phi());
  field.observable = "husimi";

  parallel_for(grid.size(), n_threads, [&](int idx) {
    const int i = idx / grid.n_phi();
    const int j = idx % grid.n_phi();
    const StateVector probe =
        coherent_state(params, PhasePoint(grid.z_nodes[i], grid.phi_nodes[j]));
    const Complex overlap = probe.amplitudes().dot(state.amplitudes());
    field.values(i, j) = std::norm(overlap);
  });
  return field;
}

MapPoint lambert_project(const PhasePoint& point) {
  return {point.phi, point.z};
}

}  // namespace dimer
