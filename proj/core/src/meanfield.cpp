#include "dimer/meanfield.hpp"

#include <cmath>
#include <numbers>

namespace dimer {

double h_mf(const MeanFieldState& state, double lambda) {
  if (std::abs(state.z) > 1.0) throw Error("imbalance z must lie in [-1, 1]");
  return 0.5 * lambda * state.z * state.z -
         std::sqrt(1.0 - state.z * state.z) * std::cos(state.phi);
}

MeanFieldDerivatives eom(const MeanFieldState& state, const DimerParams& params) {
  const double z = state.z;
  if (std::abs(z) >= 1.0) throw Error("equations of motion are singular at |z| = 1");
  const double two_j = 2.0 * params.tunneling;
  const double lambda = params.lambda();
  const double s = std::sqrt(1.0 - z * z);
  MeanFieldDerivatives d;
  d.dz_dt = -two_j * s * std::sin(state.phi);
  d.dphi_dt = two_j * (lambda * z + z * std::cos(state.phi) / s);
  return d;
}

FixedPointSet fixed_points(double lambda) {
  if (lambda < 0.0) throw Error("Lambda must be non-negative");
  const double pi = std::numbers::pi;
  FixedPointSet fps;
  fps.push_back({0.0, 0.0, Stability::stable});
  if (lambda < 1.0) {
    fps.push_back({0.0, pi, Stability::stable});
  } else if (lambda == 1.0) {
    fps.push_back({0.0, pi, Stability::marginal});
  } else {
    fps.push_back({0.0, pi, Stability::unstable});
    const double z_star = std::sqrt(1.0 - 1.0 / (lambda * lambda));
    fps.push_back({z_star, pi, Stability::stable});
    fps.push_back({-z_star, pi, Stability::stable});
  }
  return fps;
}

double f_mf(const DimerParams& params) {
  const double lambda = params.lambda();
  if (lambda < 1.0) throw Error("no self-trapping branch below Lambda = 1");
  return std::sqrt(lambda * lambda - 1.0) * params.tunneling / std::numbers::pi;
}

std::vector<MeanFieldState> integrate_meanfield(const MeanFieldState& initial,
                                                const DimerParams& params,
                                                const std::vector<double>& t_grid) {
  if (std::abs(initial.z) >= 1.0) throw Error("initial |z| must be < 1");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw Error("time grid must be strictly increasing");
  }
  if (!t_grid.empty() && t_grid.front() < 0.0) throw Error("time grid must start at t >= 0");

  // Step resolving the fastest linearized scale; omega*dt = 5e-3 keeps the
  // RK4 energy drift below 1e-8 relative over many periods.
  const double omega = 2.0 * params.tunneling * std::max(1.0, params.lambda());
  const double dt_max = omega > 0.0 ? 5e-3 / omega : 1e-3;

  auto deriv = [&](const MeanFieldState& s) { return eom(s, params); };
  auto step_rk4 = [&](MeanFieldState s, double h) {
    const auto k1 = deriv(s);
    const auto k2 = deriv({s.z + 0.5 * h * k1.dz_dt, s.phi + 0.5 * h * k1.dphi_dt});
    const auto k3 = deriv({s.z + 0.5 * h * k2.dz_dt, s.phi + 0.5 * h * k2.dphi_dt});
    const auto k4 = deriv({s.z + h * k3.dz_dt, s.phi + h * k3.dphi_dt});
    s.z += h / 6.0 * (k1.dz_dt + 2.0 * k2.dz_dt + 2.0 * k3.dz_dt + k4.dz_dt);
    s.phi += h / 6.0 * (k1.dphi_dt + 2.0 * k2.dphi_dt + 2.0 * k3.dphi_dt + k4.dphi_dt);
    if (std::abs(s.z) >= 1.0 - 1e-9) throw Error("mean-field trajectory reached a pole");
    return s;
  };

  std::vector<MeanFieldState> out;
  out.reserve(t_grid.size());
  MeanFieldState state = initial;
  double t = 0.0;
  for (const double target : t_grid) {
    while (t < target) {
      const double h = std::min(dt_max, target - t);
      state = step_rk4(state, h);
      t += h;
    }
    out.push_back(state);
  }
  return out;
}

}  // namespace dimer
