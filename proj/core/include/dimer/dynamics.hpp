#pragma once

#include <vector>

#include "dimer/model.hpp"
#include "dimer/spectra.hpp"

namespace dimer {

/// Observables sampled along an evolution. `phi` is NaN where the relative
/// phase is undefined. `projection_norm_sq` is filled only when requested.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> z;
  std::vector<double> phi;
  std::vector<double> condensate;
  std::vector<double> epr;
  std::vector<double> atoms;
  std::vector<double> projection_norm_sq;

  std::size_t size() const { return times.size(); }
};

/// Exact propagation via the eigenbasis: psi(t) = sum a_n e^{-i E_n t} |E_n>.
/// Negative t runs the evolution backwards.
StateVector evolve_spectral(const StateVector& state, const EigenDecomposition& eig, double t);

/// Classical RK4 integration of i dpsi/dt = H psi. Exists as an independent
/// cross-check of the spectral path; the norm is left to drift during the
/// integration and a drift beyond 1e-6 raises an error. dt = 0 picks
/// 1e-4 / max(J, U*N).
StateVector evolve_rk4(const StateVector& state, const DimerParams& params, double t,
                       double dt = 0.0);

/// All single-state observables at each grid time, evolved spectrally.
/// projection_k > 0 additionally records the top-k projection norm.
TimeSeries observable_series(const StateVector& state, const EigenDecomposition& eig,
                             const std::vector<double>& t_grid, int projection_k = 0);

/// Power spectrum of a uniformly sampled series (rectangular window, mean
/// removed). Peaks are local maxima of |DFT|^2 refined by 3-point parabolic
/// interpolation, sorted by power.
struct SpectralPeaks {
  struct Peak {
    double frequency = 0.0;  // Hz
    double power = 0.0;
  };
  std::vector<Peak> peaks;
  double resolution = 0.0;  // Hz, inverse record span

  /// Strongest peak with frequency in [f_lo, f_hi]; throws if none.
  const Peak& strongest_in(double f_lo, double f_hi) const;
};

SpectralPeaks power_spectrum(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace dimer
