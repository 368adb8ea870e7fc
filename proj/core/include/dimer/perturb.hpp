#pragma once

#include <array>

#include "dimer/model.hpp"

namespace dimer {

/// Fock-state energies of the uncoupled (J = 0) system,
/// eps_n = U [n(n-1) + (N-n)(N-n-1)] / 2, in 1/s. The spectrum is twofold
/// degenerate under n <-> N-n.
Eigen::VectorXd unperturbed_energies(int n_atoms, double interaction);

/// Degenerate perturbation theory about J = 0, with all energies rescaled
/// by N*U. The expansion parameter is lambda_small = J/(N*U); H0 is the
/// rescaled diagonal and V the dimensionless tridiagonal tunneling matrix
/// with entries -sqrt((m+1)(N-m)). level_index selects which degenerate
/// pair {n, N-n} the resolvent excludes.
struct PerturbationSetup {
  int n_atoms = 0;
  double lambda_small = 0.0;
  Eigen::VectorXd h0;       // rescaled diagonal energies
  Eigen::MatrixXd v;        // symmetric, zero diagonal
  int level_index = 0;

  bool on_degenerate_subspace(int m) const {
    return m == level_index || m == n_atoms - level_index;
  }
};

PerturbationSetup make_perturbation_setup(int n_atoms, double tunneling, double interaction,
                                          int level_index);

/// Resolvent diagonal 1/(h0_m - h0_n), zero on the degenerate subspace.
Eigen::VectorXd resolvent_diagonal(const PerturbationSetup& setup);

/// Order-k correction matrix of the degenerate expansion (rescaled units).
struct WMatrix {
  int order = 0;
  Eigen::MatrixXd m;
};

/// W2 = -V L^-1 V assembled from its closed form: entries only on the main
/// and +-2 diagonals, with resolvent denominators against the level under
/// study. Throws when a referenced denominator collides with the degenerate
/// subspace (happens for the lowest levels when N is small).
WMatrix build_w2(const PerturbationSetup& setup);

/// Top three level energies with second-order shifts, unscaled back to 1/s.
/// Requires N >= 7 so the printed denominators stay clear of zero.
std::array<double, 3> second_order_levels(int n_atoms, double tunneling, double interaction);

/// Closed-form frequencies with the Lambda^-2 corrections:
///   f_fast = U(N-1)/2pi * [1 - (N+1)/(2(N-3)) / Lambda^2]
///   f_slow = U/pi * [1 + 3(N-1)(N+1)/(2(N-5)(N-3)) / Lambda^2]
struct PerturbativeFrequencies {
  double f_fast = 0.0;
  double f_slow = 0.0;
};

PerturbativeFrequencies perturbative_frequencies(int n_atoms, double tunneling,
                                                 double interaction);

/// Dense verification that odd perturbation orders vanish for a given level:
/// W3 = V (L^-1 V)^2 has zero diagonal on the degenerate subspace, and the
/// parity structure behind that statement holds (V odd, L^-1 even, V L^-1 V
/// even, W3 odd, W4 even). Matrix parity here means: an "odd" matrix has
/// zero entries at all even offsets from the diagonal (including the
/// diagonal itself), an "even" matrix at all odd offsets.
struct OddOrderReport {
  double max_w3_subspace_diag = 0.0;  // max |(W3)_mm| over the degenerate pair
  double max_w3_diag = 0.0;           // max |(W3)_mm| over all m
  bool v_is_odd = false;
  bool resolvent_is_even = false;
  bool vlv_is_even = false;
  bool w3_is_odd = false;
  bool w4_is_even = false;

  bool all_hold(double tol = 1e-12) const {
    return max_w3_subspace_diag <= tol && v_is_odd && resolvent_is_even && vlv_is_even &&
           w3_is_odd && w4_is_even;
  }
};

OddOrderReport verify_odd_order_vanishing(int n_atoms, int level_index);

/// Structural parity predicates used by the lemma checks.
bool is_odd_matrix(const Eigen::MatrixXd& m, double tol = 0.0);
bool is_even_matrix(const Eigen::MatrixXd& m, double tol = 0.0);

}  // namespace dimer
