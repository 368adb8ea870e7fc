#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace dimer {

using Complex = std::complex<double>;

/// Thrown on domain violations (invalid parameters, out-of-regime requests,
/// numerical failures that the caller can act on).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Model parameters of the two-well system: N atoms, tunneling rate J and
/// on-site interaction U, both in 1/s (hbar = 1 throughout).
///
/// The dimensionless interaction strength Lambda = U(N-1)/(2J) is always
/// recomputed from the stored fields; J = 0 is allowed (Lambda = +inf when
/// U > 0) so that the uncoupled-well limit can be driven directly.
struct DimerParams {
  int n_atoms = 1;
  double tunneling = 1.0;
  double interaction = 0.0;

  DimerParams() = default;
  DimerParams(int N, double J, double U) : n_atoms(N), tunneling(J), interaction(U) {
    validate();
  }

  /// Derive U from a target Lambda.
  static DimerParams from_lambda(int N, double J, double lambda) {
    if (N < 2) throw Error("from_lambda requires N >= 2");
    if (J <= 0.0) throw Error("from_lambda requires J > 0");
    if (lambda < 0.0) throw Error("Lambda must be non-negative");
    return DimerParams(N, J, 2.0 * lambda * J / (N - 1));
  }

  double lambda() const {
    if (n_atoms < 2 || interaction == 0.0) return 0.0;
    if (tunneling == 0.0) return std::numeric_limits<double>::infinity();
    return interaction * (n_atoms - 1) / (2.0 * tunneling);
  }

  void validate() const {
    if (n_atoms < 1) throw Error("n_atoms must be >= 1");
    if (tunneling < 0.0) throw Error("tunneling must be >= 0");
    if (interaction < 0.0) throw Error("interaction must be >= 0");
  }
};

/// A point (z, phi) on the phase-space sphere: population imbalance
/// z in [-1, 1] and relative phase phi reduced to [0, 2*pi).
struct PhasePoint {
  double z = 0.0;
  double phi = 0.0;

  PhasePoint() = default;
  PhasePoint(double z_, double phi_);
};

/// Imbalance plus a phase that may be undefined (vanishing coherence).
struct ImbalancePhase {
  double z = 0.0;
  std::optional<double> phi;
};

/// Pure state of the dimer over the Fock basis |n, N-n>, where index n
/// counts atoms in well 1. Unit norm is a class invariant; construction
/// normalizes (throws on a zero vector).
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  int n_atoms() const { return static_cast<int>(amps_.size()) - 1; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex amplitude(int n) const { return amps_(n); }

 private:
  Eigen::VectorXcd amps_;
};

/// 2x2 Hermitian moment matrix rho_ij = <a_i^dag a_j>; rho21 is implied.
struct SingleParticleDensityMatrix {
  double rho11 = 0.0;
  double rho22 = 0.0;
  Complex rho12;

  double trace() const { return rho11 + rho22; }
  double largest_eigenvalue() const {
    const double d = rho11 - rho22;
    return 0.5 * (rho11 + rho22 + std::sqrt(d * d + 4.0 * std::norm(rho12)));
  }
};

/// Real symmetric tridiagonal matrix (the Hamiltonian's natural shape).
struct TridiagonalMatrix {
  Eigen::VectorXd diag;  // size N+1
  Eigen::VectorXd sub;   // size N, entries coupling n and n+1

  int dim() const { return static_cast<int>(diag.size()); }
  Eigen::MatrixXd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
};

/// Hamiltonian in the Fock basis: diagonal (U/2)[n(n-1) + (N-n)(N-n-1)],
/// off-diagonal -J*sqrt((n+1)(N-n)).
TridiagonalMatrix build_hamiltonian(const DimerParams& params);

/// Atomic coherent state |z, phi>: binomial amplitudes with phase
/// e^{i phi (N-n)} on Fock index n. Weights are computed in log space.
StateVector coherent_state(const DimerParams& params, const PhasePoint& point);

SingleParticleDensityMatrix spdm(const StateVector& state);

/// Largest SPDM eigenvalue normalized by the atom count; in [1/2, 1].
double condensate_fraction(const SingleParticleDensityMatrix& rho, double atom_count);

/// |<a1^dag a2>|^2 - <n1 n2>; the wells are entangled when this is > 0.
double epr(const StateVector& state);

/// z = (rho11 - rho22)/(rho11 + rho22); phi = arg(rho12) in [0, 2*pi),
/// absent when |rho12| < 1e-12.
ImbalancePhase imbalance_and_phase(const SingleParticleDensityMatrix& rho);

/// Expectation value of the Hamiltonian.
double energy_expectation(const TridiagonalMatrix& h, const StateVector& state);

/// Reduce an angle to [0, 2*pi).
double wrap_angle(double phi);

}  // namespace dimer
