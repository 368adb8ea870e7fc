#include "dimer/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace dimer {

StateVector evolve_spectral(const StateVector& state, const EigenDecomposition& eig, double t) {
  if (state.dim() != eig.dim()) throw Error("state and decomposition dimensions differ");
  const Eigen::VectorXcd coeff = eig.eigenvectors.transpose() * state.amplitudes();
  Eigen::VectorXcd phased(coeff.size());
  for (int k = 0; k < coeff.size(); ++k) {
    phased(k) = coeff(k) * std::polar(1.0, -eig.energies(k) * t);
  }
  return StateVector(eig.eigenvectors * phased);
}

StateVector evolve_rk4(const StateVector& state, const DimerParams& params, double t, double dt) {
  const TridiagonalMatrix h = build_hamiltonian(params);
  if (dt <= 0.0) {
    const double scale = std::max(params.tunneling, params.interaction * params.n_atoms);
    dt = scale > 0.0 ? 1e-4 / scale : 1e-4;
  }

  const double duration = std::abs(t);
  const double direction = t >= 0.0 ? 1.0 : -1.0;
  const long steps = std::max(1L, std::lround(std::ceil(duration / dt)));
  const double step = duration / double(steps);

  const Complex minus_i(0.0, -direction);
  auto rhs = [&](const Eigen::VectorXcd& v) { return (minus_i * h.apply(v)).eval(); };

  Eigen::VectorXcd psi = state.amplitudes();
  for (long s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = rhs(psi);
    const Eigen::VectorXcd k2 = rhs(psi + 0.5 * step * k1);
    const Eigen::VectorXcd k3 = rhs(psi + 0.5 * step * k2);
    const Eigen::VectorXcd k4 = rhs(psi + step * k3);
    psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const double drift = std::abs(psi.norm() - 1.0);
  if (drift > 1e-6) throw Error("RK4 norm drift " + std::to_string(drift) + " exceeds 1e-6; reduce dt");
  return StateVector(std::move(psi));
}

TimeSeries observable_series(const StateVector& state, const EigenDecomposition& eig,
                             const std::vector<double>& t_grid, int projection_k) {
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw Error("time grid must be strictly increasing");
  }
  TimeSeries ts;
  ts.times = t_grid;
  ts.z.reserve(t_grid.size());
  ts.phi.reserve(t_grid.size());
  ts.condensate.reserve(t_grid.size());
  ts.epr.reserve(t_grid.size());
  ts.atoms.reserve(t_grid.size());
  if (projection_k > 0) ts.projection_norm_sq.reserve(t_grid.size());

  const double n_atoms = state.n_atoms();
  for (const double t : t_grid) {
    const StateVector psi = evolve_spectral(state, eig, t);
    const auto rho = spdm(psi);
    const auto zp = imbalance_and_phase(rho);
    ts.z.push_back(zp.z);
    ts.phi.push_back(zp.phi.value_or(std::numeric_limits<double>::quiet_NaN()));
    ts.condensate.push_back(condensate_fraction(rho, n_atoms));
    ts.epr.push_back(epr(psi));
    ts.atoms.push_back(n_atoms);
    if (projection_k > 0) ts.projection_norm_sq.push_back(project_top_k(psi, eig, projection_k).norm_sq);
  }
  return ts;
}

const SpectralPeaks::Peak& SpectralPeaks::strongest_in(double f_lo, double f_hi) const {
  const Peak* best = nullptr;
  for (const auto& p : peaks) {
    if (p.frequency >= f_lo && p.frequency <= f_hi && (!best || p.power > best->power)) best = &p;
  }
  if (!best) throw Error("no spectral peak in the requested band");
  return *best;
}

SpectralPeaks power_spectrum(const std::vector<double>& times, const std::vector<double>& values) {
  const std::size_t n = times.size();
  if (n < 16) throw Error("power spectrum needs at least 16 samples");
  if (values.size() != n) throw Error("times and values lengths differ");

  const double dt = (times.back() - times.front()) / double(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(dt, 1.0)) {
      throw Error("power spectrum requires uniform sampling");
    }
  }

  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= double(n);

  // Direct DFT; series here are a few hundred points, well below where an
  // FFT would matter.
  const std::size_t n_freq = n / 2 + 1;
  std::vector<double> power(n_freq);
  const double w0 = 2.0 * std::numbers::pi / double(n);
  for (std::size_t k = 0; k < n_freq; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = values[j] - mean;
      re += x * std::cos(w0 * double(k) * double(j));
      im -= x * std::sin(w0 * double(k) * double(j));
    }
    power[k] = re * re + im * im;
  }

  SpectralPeaks out;
  out.resolution = 1.0 / (double(n) * dt);
  const double fs = 1.0 / dt;
  for (std::size_t k = 1; k + 1 < n_freq; ++k) {
    if (power[k] > power[k - 1] && power[k] >= power[k + 1] && power[k] > 0.0) {
      const double y1 = power[k - 1], y2 = power[k], y3 = power[k + 1];
      const double denom = y1 - 2.0 * y2 + y3;
      const double shift = denom != 0.0 ? 0.5 * (y1 - y3) / denom : 0.0;
      SpectralPeaks::Peak p;
      p.frequency = (double(k) + shift) * fs / double(n);
      p.power = y2;
      out.peaks.push_back(p);
    }
  }
  std::sort(out.peaks.begin(), out.peaks.end(),
            [](const auto& a, const auto& b) { return a.power > b.power; });
  return out;
}

}  // namespace dimer
