#pragma once

#include <vector>

#include "dimer/model.hpp"

namespace dimer {

/// Classical phase-space coordinates of the mean-field model.
struct MeanFieldState {
  double z = 0.0;
  double phi = 0.0;
};

enum class Stability { stable, unstable, marginal };

struct FixedPoint {
  double z = 0.0;
  double phi = 0.0;
  Stability stability = Stability::stable;
};

using FixedPointSet = std::vector<FixedPoint>;

/// Classical energy Lambda z^2 / 2 - sqrt(1 - z^2) cos(phi).
double h_mf(const MeanFieldState& state, double lambda);

/// Canonical equations of motion in physical time:
///   dz/dt   = -2J sqrt(1 - z^2) sin(phi)
///   dphi/dt =  2J [Lambda z + z cos(phi) / sqrt(1 - z^2)]
/// The 2J time scale makes the linearization about the self-trapped point
/// oscillate at exactly 2J sqrt(Lambda^2 - 1) rad/s. The poles |z| = 1 are
/// coordinate singularities and raise an error.
struct MeanFieldDerivatives {
  double dz_dt = 0.0;
  double dphi_dt = 0.0;
};

MeanFieldDerivatives eom(const MeanFieldState& state, const DimerParams& params);

/// Fixed points of the flow for a given Lambda. (0, 0) is always stable;
/// (0, pi) is stable below the pitchfork at Lambda = 1, marginal at it, and
/// unstable above, where the pair (+-sqrt(1 - 1/Lambda^2), pi) appears.
FixedPointSet fixed_points(double lambda);

/// Small-oscillation frequency about the self-trapped points,
/// sqrt(Lambda^2 - 1) * J / pi, in Hz. Requires Lambda >= 1.
double f_mf(const DimerParams& params);

/// RK4 integration of the flow, sampled at t_grid (which must start at 0 or
/// later; the state is advanced from t = 0). Aborts if the trajectory
/// reaches |z| >= 1 - 1e-9.
std::vector<MeanFieldState> integrate_meanfield(const MeanFieldState& initial,
                                                const DimerParams& params,
                                                const std::vector<double>& t_grid);

}  // namespace dimer
