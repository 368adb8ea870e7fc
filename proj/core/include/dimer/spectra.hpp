#pragma once

#include <utility>
#include <vector>

#include "dimer/field.hpp"
#include "dimer/model.hpp"

namespace dimer {

/// Full eigendecomposition of the Hamiltonian, energies sorted descending
/// (E0 is the top of the spectrum, where the self-trapped states live for
/// repulsive U). Each eigenvector's largest-magnitude component is made
/// positive.
///
/// Above the separatrix the spectrum pairs into quasi-degenerate doublets
/// whose splitting is far below the level spacing (and, deep in the
/// self-trapped regime, below solver resolution). `levels` groups the
/// sorted eigenvalues into those clusters; beat frequencies and projection
/// weights are only well defined per cluster, so everything downstream
/// works with levels.
struct EigenDecomposition {
  Eigen::VectorXd energies;      // descending
  Eigen::MatrixXd eigenvectors;  // column k pairs with energies[k]

  struct Level {
    int begin = 0;  // first index in the sorted spectrum
    int count = 1;  // cluster multiplicity (1 or 2)
    double energy = 0.0;  // cluster mean
  };
  std::vector<Level> levels;

  int dim() const { return static_cast<int>(energies.size()); }
};

EigenDecomposition diagonalize(const DimerParams& params);

/// Beat frequencies (Hz) among the three highest energy levels.
struct BeatSet {
  double f_fast = 0.0;  // (E0 - E1) / 2*pi
  double f_mid = 0.0;   // (E1 - E2) / 2*pi
  double f_sum = 0.0;   // (E0 - E2) / 2*pi
  double f_slow = 0.0;  // f_fast - f_mid
};

/// Requires at least three distinct levels.
BeatSet beats_near_fixed_point(const EigenDecomposition& eig);

/// Projection of a state onto the k levels carrying the most weight.
/// Within a quasi-degenerate cluster the eigenbasis is rotated so that one
/// basis vector is aligned with the state's component there (any orthonormal
/// basis of a degenerate eigenspace is equally valid); the reported
/// coefficient is then the full per-level weight, which is the
/// solver-independent quantity.
struct Projection {
  Eigen::VectorXcd coefficients;  // descending magnitude
  double norm_sq = 0.0;
};

Projection project_top_k(const StateVector& state, const EigenDecomposition& eig, int k);

/// Normalized projection of `state` onto its top-k levels by weight.
StateVector truncate_to_top_levels(const StateVector& state, const EigenDecomposition& eig, int k);

/// norm_sq of project_top_k on the coherent state at every grid node.
ScanField projection_norm_field(const DimerParams& params, const GridSpec& grid, int k,
                                int n_threads = 0);

}  // namespace dimer
