#include "dimer/model.hpp"

#include <cmath>
#include <numbers>

namespace dimer {

double wrap_angle(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;  // fmod rounding at the seam
  return r;
}

PhasePoint::PhasePoint(double z_, double phi_) : z(z_), phi(wrap_angle(phi_)) {
  if (z < -1.0 || z > 1.0) throw Error("imbalance z must lie in [-1, 1]");
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw Error("state must have at least one amplitude");
  const double nrm = amps_.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error("state has zero or non-finite norm");
  amps_ /= nrm;
}

Eigen::MatrixXd TridiagonalMatrix::dense() const {
  const int n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diag(i);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = sub(i);
    m(i + 1, i) = sub(i);
  }
  return m;
}

Eigen::VectorXcd TridiagonalMatrix::apply(const Eigen::VectorXcd& v) const {
  const int n = dim();
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) {
    Complex acc = diag(i) * v(i);
    if (i > 0) acc += sub(i - 1) * v(i - 1);
    if (i + 1 < n) acc += sub(i) * v(i + 1);
    out(i) = acc;
  }
  return out;
}

TridiagonalMatrix build_hamiltonian(const DimerParams& params) {
  params.validate();
  const int N = params.n_atoms;
  const double J = params.tunneling;
  const double U = params.interaction;
  TridiagonalMatrix h;
  h.diag.resize(N + 1);
  h.sub.resize(N);
  for (int n = 0; n <= N; ++n) {
    h.diag(n) = 0.5 * U * (double(n) * (n - 1) + double(N - n) * (N - n - 1));
  }
  for (int n = 0; n < N; ++n) {
    h.sub(n) = -J * std::sqrt(double(n + 1) * double(N - n));
  }
  return h;
}

StateVector coherent_state(const DimerParams& params, const PhasePoint& point) {
  const int N = params.n_atoms;
  const double z = point.z;
  const double phi = point.phi;

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(N + 1);
  if (z >= 1.0) {
    amps(N) = 1.0;
    return StateVector(std::move(amps));
  }
  if (z <= -1.0) {
    amps(0) = 1.0;
    return StateVector(std::move(amps));
  }

  const double log_p = std::log1p(z) - std::numbers::ln2;    // log((1+z)/2)
  const double log_q = std::log1p(-z) - std::numbers::ln2;   // log((1-z)/2)
  for (int n = 0; n <= N; ++n) {
    const double log_binom = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
    const double log_mag = 0.5 * (log_binom + n * log_p + (N - n) * log_q);
    amps(n) = std::polar(std::exp(log_mag), phi * (N - n));
  }
  return StateVector(std::move(amps));
}

SingleParticleDensityMatrix spdm(const StateVector& state) {
  const int N = state.n_atoms();
  const auto& c = state.amplitudes();
  SingleParticleDensityMatrix rho;
  Complex r12 = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double p = std::norm(c(n));
    rho.rho11 += p * n;
    rho.rho22 += p * (N - n);
    if (n < N) r12 += std::conj(c(n + 1)) * c(n) * std::sqrt(double(n + 1) * double(N - n));
  }
  rho.rho12 = r12;
  return rho;
}

double condensate_fraction(const SingleParticleDensityMatrix& rho, double atom_count) {
  if (!(atom_count > 0.0)) throw Error("condensate fraction of an empty system is undefined");
  return rho.largest_eigenvalue() / atom_count;
}

double epr(const StateVector& state) {
  const int N = state.n_atoms();
  const auto& c = state.amplitudes();
  Complex r12 = 0.0;
  double n1n2 = 0.0;
  for (int n = 0; n <= N; ++n) {
    n1n2 += std::norm(c(n)) * double(n) * double(N - n);
    if (n < N) r12 += std::conj(c(n + 1)) * c(n) * std::sqrt(double(n + 1) * double(N - n));
  }
  return std::norm(r12) - n1n2;
}

ImbalancePhase imbalance_and_phase(const SingleParticleDensityMatrix& rho) {
  const double total = rho.trace();
  if (!(total > 0.0)) throw Error("imbalance of an empty system is undefined");
  ImbalancePhase out;
  out.z = (rho.rho11 - rho.rho22) / total;
  if (std::abs(rho.rho12) >= 1e-12) out.phi = wrap_angle(std::arg(rho.rho12));
  return out;
}

double energy_expectation(const TridiagonalMatrix& h, const StateVector& state) {
  const auto& c = state.amplitudes();
  return std::real(c.dot(h.apply(c)));
}

}  // namespace dimer
