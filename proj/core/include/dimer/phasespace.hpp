#pragma once

#include <optional>
#include <vector>

#include "dimer/dissipation.hpp"
#include "dimer/dynamics.hpp"
#include "dimer/field.hpp"
#include "dimer/model.hpp"

namespace dimer {

enum class Observable { condensate_fraction, epr };

/// Evolve the coherent state at every grid node to t_final and evaluate the
/// observable there.
ScanField scan_observable(const DimerParams& params, const GridSpec& grid, double t_final,
                          Observable observable, int n_threads = 0);

/// Fraction of sampled initial conditions with EPR > 0 at each time.
struct FractionSeries {
  std::vector<double> times;
  std::vector<double> fraction;
  int sample_count = 0;
};

/// Initial conditions are the nodes of `sampler` (use a cell-centered grid:
/// uniform in (z, phi) is exactly uniform on the sphere and avoids the
/// poles). Without a schedule each sample evolves unitarily; with one, the
/// per-sample EPR comes from that sample's ensemble-averaged moments using
/// config.n_trajectories stochastic runs. Requires >= 100 samples.
FractionSeries entangled_fraction(const DimerParams& params, const GridSpec& sampler,
                                  const std::vector<double>& t_grid,
                                  const std::optional<LossSchedule>& schedule = std::nullopt,
                                  const std::optional<JumpConfig>& config = std::nullopt,
                                  int n_threads = 0);

/// Husimi field |<z, phi | psi>|^2 on the grid.
ScanField husimi_field(const StateVector& state, const GridSpec& grid, int n_threads = 0);

/// Cylindrical equal-area map coordinates: x = phi, y = z.
struct MapPoint {
  double x = 0.0;
  double y = 0.0;
};

MapPoint lambert_project(const PhasePoint& point);

}  // namespace dimer
