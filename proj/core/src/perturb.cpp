#include "dimer/perturb.hpp"

#include <cmath>
#include <numbers>

namespace dimer {

Eigen::VectorXd unperturbed_energies(int n_atoms, double interaction) {
  if (n_atoms < 1) throw Error("n_atoms must be >= 1");
  Eigen::VectorXd eps(n_atoms + 1);
  for (int n = 0; n <= n_atoms; ++n) {
    eps(n) = 0.5 * interaction *
             (double(n) * (n - 1) + double(n_atoms - n) * (n_atoms - n - 1));
  }
  return eps;
}

PerturbationSetup make_perturbation_setup(int n_atoms, double tunneling, double interaction,
                                          int level_index) {
  if (n_atoms < 1) throw Error("n_atoms must be >= 1");
  if (interaction <= 0.0) throw Error("perturbation about J = 0 requires U > 0");
  if (level_index < 0 || level_index > n_atoms) throw Error("level index out of range");

  const int dim = n_atoms + 1;
  PerturbationSetup s;
  s.n_atoms = n_atoms;
  s.lambda_small = tunneling / (n_atoms * interaction);
  s.level_index = level_index;
  s.h0.resize(dim);
  for (int n = 0; n < dim; ++n) {
    s.h0(n) = (double(n) * (n - 1) + double(n_atoms - n) * (n_atoms - n - 1)) / (2.0 * n_atoms);
  }
  s.v = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 0; m + 1 < dim; ++m) {
    const double t = -std::sqrt(double(m + 1) * double(n_atoms - m));
    s.v(m, m + 1) = t;
    s.v(m + 1, m) = t;
  }
  return s;
}

Eigen::VectorXd resolvent_diagonal(const PerturbationSetup& setup) {
  const int dim = setup.n_atoms + 1;
  const double e_n = setup.h0(setup.level_index);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(dim);
  for (int m = 0; m < dim; ++m) {
    if (setup.on_degenerate_subspace(m)) continue;
    const double d = setup.h0(m) - e_n;
    if (d == 0.0) throw Error("accidental degeneracy off the nominal subspace");
    l(m) = 1.0 / d;
  }
  return l;
}

WMatrix build_w2(const PerturbationSetup& setup) {
  const int N = setup.n_atoms;
  const int dim = N + 1;
  const double e_n = setup.h0(setup.level_index);

  // hop weight entering V: v_m = V_{m,m+1} = -sqrt((m+1)(N-m))
  auto hop_sq = [&](int m) { return double(m + 1) * double(N - m); };
  // 1/(h0_m - e_n), zero if m sits on the degenerate subspace
  auto res = [&](int m) -> double {
    if (setup.on_degenerate_subspace(m)) return 0.0;
    const double d = setup.h0(m) - e_n;
    if (d == 0.0) throw Error("perturbation series ill-defined: vanishing denominator");
    return 1.0 / d;
  };

  WMatrix w;
  w.order = 2;
  w.m = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 0; m < dim; ++m) {
    double d = 0.0;
    if (m > 0) d -= hop_sq(m - 1) * res(m - 1);
    if (m < N) d -= hop_sq(m) * res(m);
    w.m(m, m) = d;
    if (m + 2 < dim) {
      const double off = -std::sqrt(hop_sq(m) * hop_sq(m + 1)) * res(m + 1);
      w.m(m, m + 2) = off;
      w.m(m + 2, m) = off;
    }
  }
  return w;
}

std::array<double, 3> second_order_levels(int n_atoms, double tunneling, double interaction) {
  if (n_atoms < 7) throw Error("second-order level formulas need N >= 7");
  if (interaction <= 0.0) throw Error("second-order levels need U > 0");

  const double nu = n_atoms * interaction;
  const double lam_sq = (tunneling / nu) * (tunneling / nu);
  std::array<double, 3> out{};
  for (int level = 0; level < 3; ++level) {
    const auto setup = make_perturbation_setup(n_atoms, tunneling, interaction, level);
    const auto w2 = build_w2(setup);
    out[level] = nu * (setup.h0(level) + lam_sq * w2.m(level, level));
  }
  return out;
}

PerturbativeFrequencies perturbative_frequencies(int n_atoms, double tunneling,
                                                 double interaction) {
  if (n_atoms < 7) throw Error("perturbative frequencies need N >= 7");
  if (interaction <= 0.0) throw Error("perturbative frequencies need U > 0");

  const double N = n_atoms;
  const double pi = std::numbers::pi;
  const DimerParams params(n_atoms, tunneling, interaction);
  const double lambda = params.lambda();
  const double inv_l2 = tunneling > 0.0 ? 1.0 / (lambda * lambda) : 0.0;

  PerturbativeFrequencies f;
  f.f_fast = interaction * (N - 1) / (2.0 * pi) *
             (1.0 - 0.5 * (N + 1) / (N - 3) * inv_l2);
  f.f_slow = interaction / pi *
             (1.0 + 1.5 * (N - 1) * (N + 1) / ((N - 5) * (N - 3)) * inv_l2);
  return f;
}

bool is_odd_matrix(const Eigen::MatrixXd& m, double tol) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if ((i - j) % 2 == 0 && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

bool is_even_matrix(const Eigen::MatrixXd& m, double tol) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if ((i - j) % 2 != 0 && std::abs(m(i, j)) > tol) return false;
    }
  }
  return true;
}

OddOrderReport verify_odd_order_vanishing(int n_atoms, int level_index) {
  // unit U: the rescaled structure is U-independent
  const auto setup = make_perturbation_setup(n_atoms, 0.0, 1.0, level_index);
  const Eigen::VectorXd l = resolvent_diagonal(setup);
  const Eigen::MatrixXd lv = l.asDiagonal() * setup.v;
  const Eigen::MatrixXd w3 = setup.v * lv * lv;

  const auto w2 = build_w2(setup);
  const double eps2 = w2.m(level_index, level_index);
  const Eigen::MatrixXd w4 =
      -setup.v * lv * lv * lv - eps2 * setup.v * l.asDiagonal() * l.asDiagonal() * setup.v;

  const double scale = std::max(1.0, w3.cwiseAbs().maxCoeff());
  const double tol = 1e-13 * scale;

  OddOrderReport r;
  r.max_w3_subspace_diag = std::max(std::abs(w3(level_index, level_index)),
                                    std::abs(w3(n_atoms - level_index, n_atoms - level_index)));
  r.max_w3_diag = w3.diagonal().cwiseAbs().maxCoeff();
  r.v_is_odd = is_odd_matrix(setup.v, 0.0);
  r.resolvent_is_even = is_even_matrix(Eigen::MatrixXd(l.asDiagonal()), 0.0);
  r.vlv_is_even = is_even_matrix(setup.v * l.asDiagonal() * setup.v, tol);
  r.w3_is_odd = is_odd_matrix(w3, tol);
  r.w4_is_even = is_even_matrix(w4, 1e-13 * std::max(1.0, w4.cwiseAbs().maxCoeff()));
  return r;
}

}  // namespace dimer
