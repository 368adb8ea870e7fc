#include "dimer/revival.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dimer/perturb.hpp"

namespace dimer {

namespace {

// Exact J = 0 evolution: diagonal phases from the Fock energies.
Eigen::VectorXcd evolve_uncoupled(const StateVector& state, double interaction, double t) {
  const Eigen::VectorXd eps = unperturbed_energies(state.n_atoms(), interaction);
  Eigen::VectorXcd out(state.dim());
  for (int n = 0; n < state.dim(); ++n) {
    out(n) = state.amplitude(n) * std::polar(1.0, -eps(n) * t);
  }
  return out;
}

double phase_factor(PhaseAction action, int n) {
  switch (action) {
    case PhaseAction::identity: return 1.0;
    case PhaseAction::global_minus: return -1.0;
    case PhaseAction::alternating: return (n % 2 == 0) ? 1.0 : -1.0;
    case PhaseAction::minus_alternating: return (n % 2 == 0) ? -1.0 : 1.0;
  }
  return 1.0;
}

}  // namespace

double revival_period(double interaction) {
  if (interaction <= 0.0) throw Error("no revival without interaction (U must be > 0)");
  return std::numbers::pi / interaction;
}

RevivalPattern revival_phase_pattern(int n_atoms) {
  if (n_atoms < 1) throw Error("n_atoms must be >= 1");
  RevivalPattern p;
  p.tau = std::numeric_limits<double>::quiet_NaN();
  p.n_mod_4 = n_atoms % 4;
  switch (p.n_mod_4) {
    case 1: p.action = PhaseAction::identity; break;
    case 2: p.action = PhaseAction::minus_alternating; break;
    case 3: p.action = PhaseAction::global_minus; break;
    case 0: p.action = PhaseAction::alternating; break;
  }
  return p;
}

RevivalPattern revival_phase_pattern(int n_atoms, double interaction) {
  RevivalPattern p = revival_phase_pattern(n_atoms);
  p.tau = revival_period(interaction);
  return p;
}

double verify_wavefunction_revival(int n_atoms, double interaction, const StateVector& state) {
  if (state.n_atoms() != n_atoms) throw Error("state size does not match n_atoms");
  const RevivalPattern pattern = revival_phase_pattern(n_atoms, interaction);
  const Eigen::VectorXcd evolved = evolve_uncoupled(state, interaction, pattern.tau);

  double max_dev = 0.0;
  for (int n = 0; n <= n_atoms; ++n) {
    const Complex predicted = phase_factor(pattern.action, n) * state.amplitude(n);
    max_dev = std::max(max_dev, std::abs(evolved(n) - predicted));
  }
  return max_dev;
}

ObservableRevival verify_observable_revival(int n_atoms, double interaction,
                                            const StateVector& state) {
  if (state.n_atoms() != n_atoms) throw Error("state size does not match n_atoms");
  const double tau = revival_period(interaction);
  const StateVector after(evolve_uncoupled(state, interaction, tau));

  const auto rho0 = spdm(state);
  const auto rho1 = spdm(after);
  ObservableRevival r;
  r.condensate_deviation =
      std::abs(condensate_fraction(rho1, n_atoms) - condensate_fraction(rho0, n_atoms));
  r.epr_deviation = std::abs(epr(after) - epr(state));
  r.rho12_initial = rho0.rho12;
  r.rho12_after = rho1.rho12;
  return r;
}

}  // namespace dimer
