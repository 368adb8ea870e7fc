#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dimer/dynamics.hpp"
#include "dimer/model.hpp"

namespace dimer {

/// Piecewise-constant loss rates: within [t_start, t_end) atoms leave well j
/// at rate gamma_j. Windows must not overlap; outside all windows the
/// evolution is unitary.
struct LossWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

class LossSchedule {
 public:
  LossSchedule() = default;
  explicit LossSchedule(std::vector<LossWindow> windows);

  const std::vector<LossWindow>& windows() const { return windows_; }
  std::pair<double, double> rates_at(double t) const;
  double max_rate() const;
  bool any_loss() const { return max_rate() > 0.0; }

 private:
  std::vector<LossWindow> windows_;  // sorted by t_start
};

/// Knobs of the stochastic solver. dt = 0 lets the run pick
/// min(1e-4, 0.01/(gamma_max * N)) per Hilbert-space dimension, which keeps
/// the per-step jump probability at the percent level even if every atom
/// sat in the lossy well. An explicit dt must satisfy that same bound for
/// the initial atom number.
struct JumpConfig {
  double dt = 0.0;
  std::uint64_t rng_seed = 0;
  int n_trajectories = 1;
  int record_stride = 1;
};

/// Per-step removal probabilities dp_j = dt * gamma_j * <n_j>. Throws when
/// their sum exceeds 0.1 (the single-jump-per-step regime is gone).
std::pair<double, double> jump_probabilities(const StateVector& state, double gamma1,
                                             double gamma2, double dt);

/// Annihilate one atom in the given well (1 or 2): amplitudes map through
/// a_j, the Hilbert space shrinks by one, and the result is renormalized.
/// Jumping on a provably empty well is an error.
StateVector apply_jump(const StateVector& state, int well);

/// One step of exp(-i H' dt) with H' = H - (i/2)(gamma1 n1 + gamma2 n2);
/// returns unnormalized amplitudes (the norm decrease encodes the no-jump
/// probability).
Eigen::VectorXcd nonunitary_step(const StateVector& state, const DimerParams& params,
                                 double gamma1, double gamma2, double dt);

/// One stochastic realization of the loss process, observables sampled at
/// t_grid (thinned by config.record_stride). Deterministic in
/// (config.rng_seed); trajectory index 0 of the ensemble.
TimeSeries run_trajectory(const StateVector& state, const DimerParams& params,
                          const LossSchedule& schedule, const JumpConfig& config,
                          const std::vector<double>& t_grid);

/// Trajectory-averaged moments with standard errors. Condensate fraction
/// and EPR are nonlinear in the state and are therefore computed from the
/// averaged moments, which is what the master equation predicts.
struct EnsembleSeries {
  std::vector<double> times;
  std::vector<double> n1, n2, n1n2, atoms;
  std::vector<Complex> rho12;
  std::vector<double> se_n1, se_n2, se_n1n2, se_atoms, se_rho12_re, se_rho12_im;
  int n_trajectories = 0;

  std::size_t size() const { return times.size(); }
  std::vector<double> condensate() const;
  std::vector<double> epr() const;
  std::vector<double> imbalance() const;
};

/// Average of config.n_trajectories runs; trajectory i uses the substream
/// (config.rng_seed, i), so results do not depend on thread scheduling.
EnsembleSeries run_ensemble(const StateVector& state, const DimerParams& params,
                            const LossSchedule& schedule, const JumpConfig& config,
                            const std::vector<double>& t_grid, int n_threads = 1);

/// Exact moments by direct integration of the Lindblad master equation over
/// the direct sum of all atom-number sectors (dimension (N+1)(N+2)/2).
/// Desk-scale oracle: refuses N > 12.
EnsembleSeries master_equation_oracle(const StateVector& state, const DimerParams& params,
                                      const LossSchedule& schedule,
                                      const std::vector<double>& t_grid);

}  // namespace dimer
