#include "dimer/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "dimer/parallel.hpp"

namespace dimer {

namespace {

// Group the descending spectrum into quasi-degenerate clusters. A pair is
// merged when its gap is tiny against the neighboring level spacing; the
// absolute floor catches exact ties at the J = 0 point.
std::vector<EigenDecomposition::Level> cluster_levels(const Eigen::VectorXd& e) {
  const int n = static_cast<int>(e.size());
  const double scale = std::max(std::abs(e(0)), std::abs(e(n - 1)));
  const double abs_floor = 1e-9 * std::max(scale, 1.0);

  std::vector<EigenDecomposition::Level> levels;
  int i = 0;
  while (i < n) {
    bool merge = false;
    if (i + 1 < n) {
      const double gap = e(i) - e(i + 1);
      double reference = 0.0;
      if (i + 2 < n) reference = e(i + 1) - e(i + 2);
      else if (!levels.empty()) reference = levels.back().energy - e(i);
      merge = gap <= std::max(abs_floor, 0.2 * reference);
    }
    EigenDecomposition::Level lv;
    lv.begin = i;
    lv.count = merge ? 2 : 1;
    lv.energy = merge ? 0.5 * (e(i) + e(i + 1)) : e(i);
    levels.push_back(lv);
    i += lv.count;
  }
  return levels;
}

}  // namespace

EigenDecomposition diagonalize(const DimerParams& params) {
  const TridiagonalMatrix h = build_hamiltonian(params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(h.diag, h.sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");

  const int n = h.dim();
  EigenDecomposition eig;
  eig.energies.resize(n);
  eig.eigenvectors.resize(n, n);
  // ascending from the solver; flip to descending
  for (int k = 0; k < n; ++k) {
    eig.energies(k) = solver.eigenvalues()(n - 1 - k);
    eig.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  for (int k = 0; k < n; ++k) {
    int imax = 0;
    eig.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (eig.eigenvectors(imax, k) < 0.0) eig.eigenvectors.col(k) *= -1.0;
  }
  eig.levels = cluster_levels(eig.energies);
  return eig;
}

BeatSet beats_near_fixed_point(const EigenDecomposition& eig) {
  if (eig.levels.size() < 3) throw Error("beat extraction needs at least three distinct levels");
  const double e0 = eig.levels[0].energy;
  const double e1 = eig.levels[1].energy;
  const double e2 = eig.levels[2].energy;
  const double two_pi = 2.0 * std::numbers::pi;
  BeatSet b;
  b.f_fast = (e0 - e1) / two_pi;
  b.f_mid = (e1 - e2) / two_pi;
  b.f_sum = (e0 - e2) / two_pi;
  b.f_slow = b.f_fast - b.f_mid;
  return b;
}

namespace {

struct LevelWeight {
  int level = 0;
  double weight_sq = 0.0;
  Complex representative;  // coefficient of the state-aligned cluster vector
};

std::vector<LevelWeight> level_weights(const StateVector& state, const EigenDecomposition& eig) {
  const Eigen::VectorXcd coeff = eig.eigenvectors.transpose() * state.amplitudes();
  std::vector<LevelWeight> out;
  out.reserve(eig.levels.size());
  for (int l = 0; l < static_cast<int>(eig.levels.size()); ++l) {
    const auto& lv = eig.levels[l];
    double w_sq = 0.0;
    Complex dominant = 0.0;
    for (int j = lv.begin; j < lv.begin + lv.count; ++j) {
      w_sq += std::norm(coeff(j));
      if (std::abs(coeff(j)) > std::abs(dominant)) dominant = coeff(j);
    }
    LevelWeight lw;
    lw.level = l;
    lw.weight_sq = w_sq;
    const double mag = std::abs(dominant);
    lw.representative = mag > 0.0 ? std::sqrt(w_sq) * (dominant / mag) : Complex(std::sqrt(w_sq), 0.0);
    out.push_back(lw);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LevelWeight& a, const LevelWeight& b) { return a.weight_sq > b.weight_sq; });
  return out;
}

}  // namespace

Projection project_top_k(const StateVector& state, const EigenDecomposition& eig, int k) {
  if (k < 1 || k > eig.dim()) throw Error("projection order k out of range");
  const auto weights = level_weights(state, eig);

  Projection p;
  p.coefficients.resize(k);
  int filled = 0;
  for (const auto& lw : weights) {
    if (filled >= k) break;
    p.coefficients(filled++) = lw.representative;
    p.norm_sq += lw.weight_sq;
    // the remaining cluster directions carry zero coefficient by construction
    const int extra = eig.levels[lw.level].count - 1;
    for (int e = 0; e < extra && filled < k; ++e) p.coefficients(filled++) = 0.0;
  }
  while (filled < k) p.coefficients(filled++) = 0.0;
  return p;
}

StateVector truncate_to_top_levels(const StateVector& state, const EigenDecomposition& eig, int k) {
  if (k < 1 || k > static_cast<int>(eig.levels.size())) throw Error("level count out of range");
  const Eigen::VectorXcd coeff = eig.eigenvectors.transpose() * state.amplitudes();
  auto weights = level_weights(state, eig);

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(state.dim());
  for (int l = 0; l < k; ++l) {
    const auto& lv = eig.levels[weights[l].level];
    for (int j = lv.begin; j < lv.begin + lv.count; ++j) {
      amps += coeff(j) * eig.eigenvectors.col(j);
    }
  }
  return StateVector(std::move(amps));  // renormalizes
}

ScanField projection_norm_field(const DimerParams& params, const GridSpec& grid, int k,
                                int n_threads) {
  const EigenDecomposition eig = diagonalize(params);
  ScanField field;
  field.grid = grid;
  field.values.resize(grid.n_z(), grid.n_phi());
  field.observable = "projection_norm_sq";

  parallel_for(grid.size(), n_threads, [&](int idx) {
    const int i = idx / grid.n_phi();
    const int j = idx % grid.n_phi();
    const StateVector psi = coherent_state(params, PhasePoint(grid.z_nodes[i], grid.phi_nodes[j]));
    field.values(i, j) = project_top_k(psi, eig, k).norm_sq;
  });
  return field;
}

}  // namespace dimer
