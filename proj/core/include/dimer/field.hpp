#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dimer {

/// Rectangular grid over the phase-space sphere, z in [-1, 1] and
/// phi in [0, 2*pi). Two layouts: `inclusive` places nodes on the z
/// endpoints (plot-style grids), `cell_centered` keeps all nodes in the
/// interior and is exactly uniform on the sphere (z is the equal-area
/// coordinate), which is what sampling experiments want.
struct GridSpec {
  std::vector<double> z_nodes;
  std::vector<double> phi_nodes;

  static GridSpec inclusive(int n_z, int n_phi) {
    GridSpec g;
    g.z_nodes.resize(n_z);
    g.phi_nodes.resize(n_phi);
    for (int i = 0; i < n_z; ++i) {
      g.z_nodes[i] = n_z > 1 ? -1.0 + 2.0 * i / (n_z - 1) : 0.0;
    }
    const double two_pi = 6.283185307179586476925286766559;
    for (int j = 0; j < n_phi; ++j) g.phi_nodes[j] = two_pi * j / n_phi;
    return g;
  }

  static GridSpec cell_centered(int n_z, int n_phi) {
    GridSpec g;
    g.z_nodes.resize(n_z);
    g.phi_nodes.resize(n_phi);
    for (int i = 0; i < n_z; ++i) g.z_nodes[i] = -1.0 + (i + 0.5) * 2.0 / n_z;
    const double two_pi = 6.283185307179586476925286766559;
    for (int j = 0; j < n_phi; ++j) g.phi_nodes[j] = (j + 0.5) * two_pi / n_phi;
    return g;
  }

  int n_z() const { return static_cast<int>(z_nodes.size()); }
  int n_phi() const { return static_cast<int>(phi_nodes.size()); }
  int size() const { return n_z() * n_phi(); }
};

/// Scalar field sampled on a GridSpec; values(i, j) pairs with
/// (z_nodes[i], phi_nodes[j]).
struct ScanField {
  GridSpec grid;
  Eigen::MatrixXd values;
  std::string observable;
  double evolution_time = 0.0;
};

}  // namespace dimer
