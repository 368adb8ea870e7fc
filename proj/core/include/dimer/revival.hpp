#pragma once

#include "dimer/model.hpp"

namespace dimer {

/// What translating a J = 0 state by tau = pi/U does to its Fock
/// amplitudes. The case is set by N mod 4 alone.
enum class PhaseAction {
  identity,           // N = 1 mod 4
  minus_alternating,  // N = 2 mod 4: amplitudes -> -(-1)^n a_n
  global_minus,       // N = 3 mod 4
  alternating,        // N = 0 mod 4: amplitudes -> (-1)^n a_n
};

struct RevivalPattern {
  double tau = 0.0;  // pi/U; NaN when constructed without U
  int n_mod_4 = 0;
  PhaseAction action = PhaseAction::identity;
};

/// tau = pi/U (hbar = 1). U = 0 never revives.
double revival_period(double interaction);

RevivalPattern revival_phase_pattern(int n_atoms);
RevivalPattern revival_phase_pattern(int n_atoms, double interaction);

/// Evolve `state` by tau at J = 0 and compare amplitude-by-amplitude with
/// the predicted phase map; returns the max absolute deviation.
double verify_wavefunction_revival(int n_atoms, double interaction, const StateVector& state);

/// Deviations of the observables after one period at J = 0. The
/// wavefunction itself only revives for odd N, but the sign flip of the
/// coherence rho12 for even N cancels in both the condensate fraction and
/// EPR, so these must revive for every N.
struct ObservableRevival {
  double condensate_deviation = 0.0;  // |c(tau) - c(0)|
  double epr_deviation = 0.0;         // |EPR(tau) - EPR(0)|
  Complex rho12_initial;
  Complex rho12_after;
};

ObservableRevival verify_observable_revival(int n_atoms, double interaction,
                                            const StateVector& state);

}  // namespace dimer
