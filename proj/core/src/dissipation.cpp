#include "dimer/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include <unsupported/Eigen/MatrixFunctions>

#include "dimer/parallel.hpp"
#include "dimer/rng.hpp"

namespace dimer {

LossSchedule::LossSchedule(std::vector<LossWindow> windows) : windows_(std::move(windows)) {
  std::sort(windows_.begin(), windows_.end(),
            [](const LossWindow& a, const LossWindow& b) { return a.t_start < b.t_start; });
  for (const auto& w : windows_) {
    if (!(w.t_end > w.t_start)) throw Error("loss window must have t_end > t_start");
    if (w.gamma1 < 0.0 || w.gamma2 < 0.0) throw Error("loss rates must be >= 0");
  }
  for (std::size_t i = 1; i < windows_.size(); ++i) {
    if (windows_[i].t_start < windows_[i - 1].t_end - 1e-15) {
      throw Error("loss windows must not overlap");
    }
  }
}

std::pair<double, double> LossSchedule::rates_at(double t) const {
  for (const auto& w : windows_) {
    if (t >= w.t_start && t < w.t_end) return {w.gamma1, w.gamma2};
  }
  return {0.0, 0.0};
}

double LossSchedule::max_rate() const {
  double m = 0.0;
  for (const auto& w : windows_) m = std::max({m, w.gamma1, w.gamma2});
  return m;
}

std::pair<double, double> jump_probabilities(const StateVector& state, double gamma1,
                                             double gamma2, double dt) {
  const int N = state.n_atoms();
  const auto& c = state.amplitudes();
  double en1 = 0.0;
  for (int n = 0; n <= N; ++n) en1 += std::norm(c(n)) * n;
  const double en2 = N - en1;
  const double dp1 = dt * gamma1 * en1;
  const double dp2 = dt * gamma2 * std::max(0.0, en2);
  if (dp1 + dp2 > 0.1) throw Error("time step too large: jump probability above 0.1");
  return {dp1, dp2};
}

StateVector apply_jump(const StateVector& state, int well) {
  const int N = state.n_atoms();
  if (well != 1 && well != 2) throw Error("well must be 1 or 2");
  if (N < 1) throw Error("cannot remove an atom from the vacuum");
  const auto& c = state.amplitudes();
  Eigen::VectorXcd out(N);
  if (well == 1) {
    for (int n = 0; n < N; ++n) out(n) = std::sqrt(double(n + 1)) * c(n + 1);
  } else {
    for (int n = 0; n < N; ++n) out(n) = std::sqrt(double(N - n)) * c(n);
  }
  if (out.norm() < 1e-300) throw Error("jump on an empty well: annihilated state has zero norm");
  return StateVector(std::move(out));
}

namespace {

Eigen::MatrixXcd pseudo_hamiltonian(const DimerParams& params, double gamma1, double gamma2) {
  const int N = params.n_atoms;
  const TridiagonalMatrix h = build_hamiltonian(params);
  Eigen::MatrixXcd hp = h.dense().cast<Complex>();
  for (int n = 0; n <= N; ++n) {
    hp(n, n) -= Complex(0.0, 0.5 * (gamma1 * n + gamma2 * (N - n)));
  }
  return hp;
}

}  // namespace

Eigen::VectorXcd nonunitary_step(const StateVector& state, const DimerParams& params,
                                 double gamma1, double gamma2, double dt) {
  if (state.n_atoms() != params.n_atoms) throw Error("state size does not match parameters");
  const Eigen::MatrixXcd hp = pseudo_hamiltonian(params, gamma1, gamma2);
  const Eigen::MatrixXcd u = (Complex(0.0, -dt) * hp).exp();
  return u * state.amplitudes();
}

namespace {

constexpr double kTimeEps = 1e-12;

struct RateSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  int window_id = -1;  // -1: free flight
};

std::vector<RateSegment> split_by_schedule(const LossSchedule& schedule, double a, double b) {
  std::vector<RateSegment> segs;
  double t = a;
  while (t < b - kTimeEps) {
    int wid = -1;
    double end = b;
    for (int i = 0; i < static_cast<int>(schedule.windows().size()); ++i) {
      const auto& w = schedule.windows()[i];
      if (t >= w.t_start - kTimeEps && t < w.t_end - kTimeEps) {
        wid = i;
        end = std::min(b, w.t_end);
        break;
      }
      if (w.t_start > t + kTimeEps) {
        end = std::min(end, w.t_start);
        break;
      }
    }
    RateSegment s;
    s.t0 = t;
    s.t1 = end;
    if (wid >= 0) {
      const auto& w = schedule.windows()[wid];
      s.g1 = w.gamma1;
      s.g2 = w.gamma2;
      if (s.g1 + s.g2 > 0.0) s.window_id = wid;
    }
    segs.push_back(s);
    t = end;
  }
  return segs;
}

// Precomputed evolution machinery for every Hilbert-space dimension the
// trajectory can visit (atoms only ever leave) and every lossy window.
// Immutable after construction, so trajectories share it across threads.
class EvolutionContext {
 public:
  struct WindowProp {
    double dt = 0.0;
    Eigen::MatrixXcd u;                 // exp(-i H' dt)
    Eigen::MatrixXcd vec, vec_inv;      // H' = V diag(lambda) V^-1
    Eigen::VectorXcd evals;
  };

  EvolutionContext(const DimerParams& params, const LossSchedule& schedule,
                   const JumpConfig& config)
      : j_(params.tunneling), u_(params.interaction), n_windows_(schedule.windows().size()) {
    const int n0 = params.n_atoms;
    if (config.dt < 0.0) throw Error("dt must be >= 0");
    if (config.dt > 0.0 && schedule.max_rate() * n0 * config.dt > 0.01 + 1e-12) {
      throw Error("dt violates the single-jump bound gamma*N*dt <= 0.01");
    }
    dims_.resize(n0 + 1);
    for (int n = n0; n >= 0; --n) {
      auto& d = dims_[n];
      if (n >= 1) {
        d.eig = diagonalize(DimerParams(n, j_, u_));
      } else {
        d.eig.energies = Eigen::VectorXd::Zero(1);
        d.eig.eigenvectors = Eigen::MatrixXd::Identity(1, 1);
        d.eig.levels = {EigenDecomposition::Level{0, 1, 0.0}};
      }
      d.evecs_c = d.eig.eigenvectors.cast<Complex>();
      d.props.resize(n_windows_);
      for (std::size_t w = 0; w < n_windows_; ++w) {
        const auto& win = schedule.windows()[w];
        const double gmax = std::max(win.gamma1, win.gamma2);
        if (gmax <= 0.0) continue;
        auto& p = d.props[w];
        p.dt = config.dt > 0.0 ? config.dt
                               : std::min(1e-4, 0.01 / (gmax * std::max(1, n)));
        Eigen::MatrixXcd hp;
        if (n >= 1) {
          hp = pseudo_hamiltonian(DimerParams(n, j_, u_), win.gamma1, win.gamma2);
        } else {
          hp = Eigen::MatrixXcd::Zero(1, 1);
        }
        p.u = (Complex(0.0, -p.dt) * hp).exp();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(hp);
        if (solver.info() != Eigen::Success) throw Error("pseudo-Hamiltonian eigensolver failed");
        p.evals = solver.eigenvalues();
        p.vec = solver.eigenvectors();
        p.vec_inv = p.vec.inverse();
        // the factorized form must reproduce the exponential
        Eigen::VectorXcd ph(p.evals.size());
        for (int k = 0; k < ph.size(); ++k) ph(k) = std::exp(Complex(0.0, -p.dt) * p.evals(k));
        const double err = (p.vec * ph.asDiagonal() * p.vec_inv - p.u).cwiseAbs().maxCoeff();
        if (err > 1e-9) throw Error("pseudo-Hamiltonian factorization inaccurate");
      }
    }
  }

  const EigenDecomposition& eig(int n_atoms) const { return dims_[n_atoms].eig; }
  const Eigen::MatrixXcd& eigenvectors_c(int n_atoms) const { return dims_[n_atoms].evecs_c; }
  const WindowProp& prop(int window_id, int n_atoms) const {
    return dims_[n_atoms].props[window_id];
  }

  // exp(-i H' h) psi through the factorized form, for boundary-partial steps
  void apply_partial(int window_id, int n_atoms, double h, Eigen::VectorXcd& psi) const {
    const auto& p = dims_[n_atoms].props[window_id];
    Eigen::VectorXcd tmp = p.vec_inv * psi;
    for (int k = 0; k < tmp.size(); ++k) tmp(k) *= std::exp(Complex(0.0, -h) * p.evals(k));
    psi.noalias() = p.vec * tmp;
  }

 private:
  struct DimData {
    EigenDecomposition eig;
    Eigen::MatrixXcd evecs_c;
    std::vector<WindowProp> props;
  };
  double j_ = 0.0;
  double u_ = 0.0;
  std::size_t n_windows_ = 0;
  std::vector<DimData> dims_;
};

struct MomentSample {
  double n1 = 0.0, n2 = 0.0, n1n2 = 0.0, atoms = 0.0;
  Complex rho12;
};

MomentSample moments_of(const Eigen::VectorXcd& psi, int n_atoms) {
  MomentSample m;
  m.atoms = n_atoms;
  for (int n = 0; n <= n_atoms; ++n) {
    const double p = std::norm(psi(n));
    m.n1 += p * n;
    m.n1n2 += p * double(n) * double(n_atoms - n);
    if (n < n_atoms) {
      m.rho12 += std::conj(psi(n + 1)) * psi(n) * std::sqrt(double(n + 1) * double(n_atoms - n));
    }
  }
  m.n2 = n_atoms - m.n1;
  return m;
}

// One stochastic realization; records raw moments at the (thinned) grid.
class TrajectoryRunner {
 public:
  TrajectoryRunner(const EvolutionContext& ctx, const LossSchedule& schedule,
                   std::uint64_t seed, std::uint64_t index)
      : ctx_(ctx), schedule_(schedule), rng_(substream(seed, index)) {}

  std::vector<MomentSample> run(const StateVector& initial, const std::vector<double>& t_grid) {
    psi_ = initial.amplitudes();
    n_cur_ = initial.n_atoms();
    t_ = 0.0;
    std::vector<MomentSample> records;
    records.reserve(t_grid.size());
    for (const double target : t_grid) {
      advance_to(target);
      records.push_back(moments_of(psi_, n_cur_));
    }
    return records;
  }

 private:
  void advance_to(double target) {
    if (target < t_ - kTimeEps) throw Error("record times must be non-decreasing");
    for (const auto& seg : split_by_schedule(schedule_, t_, target)) {
      if (seg.window_id < 0) {
        free_flight(seg.t1 - seg.t0);
      } else {
        lossy_flight(seg);
      }
      t_ = seg.t1;
    }
    t_ = target;
  }

  void free_flight(double duration) {
    if (duration <= kTimeEps || n_cur_ == 0) return;
    const auto& eig = ctx_.eig(n_cur_);
    const auto& evecs = ctx_.eigenvectors_c(n_cur_);
    Eigen::VectorXcd coeff = evecs.adjoint() * psi_;
    for (int k = 0; k < coeff.size(); ++k) coeff(k) *= std::polar(1.0, -eig.energies(k) * duration);
    psi_.noalias() = evecs * coeff;
    psi_ /= psi_.norm();
  }

  void lossy_flight(const RateSegment& seg) {
    double remaining = seg.t1 - seg.t0;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (remaining > kTimeEps) {
      if (n_cur_ == 0) return;  // vacuum: nothing left to lose or evolve
      const auto& prop = ctx_.prop(seg.window_id, n_cur_);
      const double h = std::min(prop.dt, remaining);

      // occupation moments of the normalized state
      double en1 = 0.0;
      for (int n = 0; n <= n_cur_; ++n) en1 += std::norm(psi_(n)) * n;
      const double en2 = std::max(0.0, n_cur_ - en1);
      const double dp1 = h * seg.g1 * en1;
      const double dp2 = h * seg.g2 * en2;

      const double r = unif(rng_);
      if (r < dp1 + dp2) {
        const int well = r < dp1 ? 1 : 2;
        jump(well);
      } else if (h == prop.dt) {
        scratch_.noalias() = prop.u * psi_;
        psi_.swap(scratch_);
        psi_ /= psi_.norm();
      } else {
        ctx_.apply_partial(seg.window_id, n_cur_, h, psi_);
        psi_ /= psi_.norm();
      }
      remaining -= h;
    }
  }

  void jump(int well) {
    Eigen::VectorXcd out(n_cur_);
    if (well == 1) {
      for (int n = 0; n < n_cur_; ++n) out(n) = std::sqrt(double(n + 1)) * psi_(n + 1);
    } else {
      for (int n = 0; n < n_cur_; ++n) out(n) = std::sqrt(double(n_cur_ - n)) * psi_(n);
    }
    const double nrm = out.norm();
    if (nrm < 1e-300) throw Error("jump on an empty well");
    psi_ = out / nrm;
    --n_cur_;
  }

  const EvolutionContext& ctx_;
  const LossSchedule& schedule_;
  std::mt19937_64 rng_;
  Eigen::VectorXcd psi_, scratch_;
  int n_cur_ = 0;
  double t_ = 0.0;
};

std::vector<double> thin_grid(const std::vector<double>& t_grid, int stride) {
  if (stride <= 1) return t_grid;
  std::vector<double> out;
  for (std::size_t i = 0; i < t_grid.size(); i += stride) out.push_back(t_grid[i]);
  return out;
}

void validate_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw Error("time grid is empty");
  if (t_grid.front() < 0.0) throw Error("time grid must start at t >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw Error("time grid must be strictly increasing");
  }
}

}  // namespace

TimeSeries run_trajectory(const StateVector& state, const DimerParams& params,
                          const LossSchedule& schedule, const JumpConfig& config,
                          const std::vector<double>& t_grid) {
  validate_grid(t_grid);
  const auto grid = thin_grid(t_grid, config.record_stride);
  const EvolutionContext ctx(params, schedule, config);
  TrajectoryRunner runner(ctx, schedule, config.rng_seed, 0);

  // Single-trajectory states are pure, so the scalar observables follow
  // directly from the recorded moments.
  TimeSeries ts;
  ts.times = grid;
  const auto records = runner.run(state, grid);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& m : records) {
    ts.atoms.push_back(m.atoms);
    if (m.atoms > 0.0) {
      const double d = m.n1 - m.n2;
      const double lam = 0.5 * (m.atoms + std::sqrt(d * d + 4.0 * std::norm(m.rho12)));
      ts.z.push_back(d / m.atoms);
      ts.condensate.push_back(lam / m.atoms);
    } else {
      ts.z.push_back(nan);
      ts.condensate.push_back(nan);
    }
    ts.phi.push_back(std::abs(m.rho12) >= 1e-12 ? wrap_angle(std::arg(m.rho12)) : nan);
    ts.epr.push_back(std::norm(m.rho12) - m.n1n2);
  }
  return ts;
}

std::vector<double> EnsembleSeries::condensate() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (atoms[i] > 1e-12) {
      const double d = n1[i] - n2[i];
      out[i] = (atoms[i] + std::sqrt(d * d + 4.0 * std::norm(rho12[i]))) / (2.0 * atoms[i]);
    } else {
      out[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

std::vector<double> EnsembleSeries::epr() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = std::norm(rho12[i]) - n1n2[i];
  return out;
}

std::vector<double> EnsembleSeries::imbalance() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = atoms[i] > 1e-12 ? (n1[i] - n2[i]) / atoms[i]
                              : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

EnsembleSeries run_ensemble(const StateVector& state, const DimerParams& params,
                            const LossSchedule& schedule, const JumpConfig& config,
                            const std::vector<double>& t_grid, int n_threads) {
  validate_grid(t_grid);
  if (config.n_trajectories < 1) throw Error("n_trajectories must be >= 1");
  const auto grid = thin_grid(t_grid, config.record_stride);
  const EvolutionContext ctx(params, schedule, config);

  const std::size_t nt = grid.size();
  const int m = config.n_trajectories;
  std::vector<double> s_n1(nt, 0.0), s_n2(nt, 0.0), s_nn(nt, 0.0), s_at(nt, 0.0);
  std::vector<double> q_n1(nt, 0.0), q_n2(nt, 0.0), q_nn(nt, 0.0), q_at(nt, 0.0);
  std::vector<Complex> s_r12(nt, 0.0);
  std::vector<double> q_re(nt, 0.0), q_im(nt, 0.0);
  std::mutex acc_mutex;

  parallel_for(m, n_threads, [&](int i) {
    TrajectoryRunner runner(ctx, schedule, config.rng_seed, static_cast<std::uint64_t>(i));
    const auto rec = runner.run(state, grid);
    std::scoped_lock lock(acc_mutex);
    for (std::size_t k = 0; k < nt; ++k) {
      s_n1[k] += rec[k].n1;
      q_n1[k] += rec[k].n1 * rec[k].n1;
      s_n2[k] += rec[k].n2;
      q_n2[k] += rec[k].n2 * rec[k].n2;
      s_nn[k] += rec[k].n1n2;
      q_nn[k] += rec[k].n1n2 * rec[k].n1n2;
      s_at[k] += rec[k].atoms;
      q_at[k] += rec[k].atoms * rec[k].atoms;
      s_r12[k] += rec[k].rho12;
      q_re[k] += rec[k].rho12.real() * rec[k].rho12.real();
      q_im[k] += rec[k].rho12.imag() * rec[k].rho12.imag();
    }
  });

  auto stderr_of = [m](double sum, double sum_sq) {
    if (m < 2) return 0.0;
    const double mean = sum / m;
    const double var = std::max(0.0, (sum_sq - m * mean * mean) / (m - 1));
    return std::sqrt(var / m);
  };

  EnsembleSeries es;
  es.times = grid;
  es.n_trajectories = m;
  es.n1.resize(nt);
  es.n2.resize(nt);
  es.n1n2.resize(nt);
  es.atoms.resize(nt);
  es.rho12.resize(nt);
  es.se_n1.resize(nt);
  es.se_n2.resize(nt);
  es.se_n1n2.resize(nt);
  es.se_atoms.resize(nt);
  es.se_rho12_re.resize(nt);
  es.se_rho12_im.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    es.n1[k] = s_n1[k] / m;
    es.n2[k] = s_n2[k] / m;
    es.n1n2[k] = s_nn[k] / m;
    es.atoms[k] = s_at[k] / m;
    es.rho12[k] = s_r12[k] / double(m);
    es.se_n1[k] = stderr_of(s_n1[k], q_n1[k]);
    es.se_n2[k] = stderr_of(s_n2[k], q_n2[k]);
    es.se_n1n2[k] = stderr_of(s_nn[k], q_nn[k]);
    es.se_atoms[k] = stderr_of(s_at[k], q_at[k]);
    es.se_rho12_re[k] = stderr_of(s_r12[k].real(), q_re[k]);
    es.se_rho12_im[k] = stderr_of(s_r12[k].imag(), q_im[k]);
  }
  return es;
}

namespace {

// Block-diagonal density matrix over atom-number sectors 0..N. Local loss
// couples sector M+1 into sector M and never creates coherence between
// sectors, so this layout is closed under the master equation.
struct BlockDensity {
  std::vector<Eigen::MatrixXcd> block;  // block[M] is (M+1) x (M+1)

  static BlockDensity pure(const StateVector& state) {
    BlockDensity rho;
    const int n0 = state.n_atoms();
    rho.block.resize(n0 + 1);
    for (int m = 0; m <= n0; ++m) rho.block[m] = Eigen::MatrixXcd::Zero(m + 1, m + 1);
    rho.block[n0] = state.amplitudes() * state.amplitudes().adjoint();
    return rho;
  }
};

}  // namespace

EnsembleSeries master_equation_oracle(const StateVector& state, const DimerParams& params,
                                      const LossSchedule& schedule,
                                      const std::vector<double>& t_grid) {
  validate_grid(t_grid);
  const int n0 = state.n_atoms();
  if (n0 > 12) throw Error("master-equation oracle is desk-scale only (N <= 12)");
  if (state.n_atoms() != params.n_atoms) throw Error("state size does not match parameters");

  // sector Hamiltonians
  std::vector<TridiagonalMatrix> h(n0 + 1);
  for (int m = 1; m <= n0; ++m) h[m] = build_hamiltonian(DimerParams(m, params.tunneling, params.interaction));

  auto lindblad_rhs = [&](const BlockDensity& rho, double g1, double g2, BlockDensity& out) {
    for (int m = 0; m <= n0; ++m) {
      const int dim = m + 1;
      auto& d = out.block[m];
      d.setZero(dim, dim);
      const auto& r = rho.block[m];
      if (m >= 1) {
        // -i [H, rho]
        const Eigen::MatrixXd hm = h[m].dense();
        d.noalias() = Complex(0.0, -1.0) * (hm * r - r * hm);
      }
      if (g1 + g2 > 0.0) {
        // -(1/2){Gamma, rho} with Gamma = g1 n1 + g2 n2 (diagonal)
        for (int a = 0; a < dim; ++a) {
          const double ga = g1 * a + g2 * (m - a);
          for (int b = 0; b < dim; ++b) {
            const double gb = g1 * b + g2 * (m - b);
            d(a, b) -= 0.5 * (ga + gb) * r(a, b);
          }
        }
        // feed-down a_j rho a_j^dag from sector m+1
        if (m + 1 <= n0) {
          const auto& rr = rho.block[m + 1];
          for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) {
              d(a, b) += g1 * std::sqrt(double(a + 1) * double(b + 1)) * rr(a + 1, b + 1);
              d(a, b) += g2 * std::sqrt(double(m + 1 - a) * double(m + 1 - b)) * rr(a, b);
            }
          }
        }
      }
    }
  };

  // RK4 step size against the fastest Liouvillian frequency
  double spread = 0.0;
  for (int m = 1; m <= n0; ++m) {
    spread = std::max(spread, h[m].diag.maxCoeff() - h[m].diag.minCoeff() +
                                  4.0 * params.tunneling * std::sqrt(double(m)) * 0.5 * m);
  }
  const double omega = spread + 2.0 * schedule.max_rate() * n0 + params.tunneling;
  const double dt_max = omega > 0.0 ? 6e-3 / omega : 1e-3;

  BlockDensity rho = BlockDensity::pure(state);
  BlockDensity k1 = rho, k2 = rho, k3 = rho, k4 = rho, tmp = rho;

  auto rk4_step = [&](double g1, double g2, double dt) {
    lindblad_rhs(rho, g1, g2, k1);
    for (int m = 0; m <= n0; ++m) tmp.block[m] = rho.block[m] + 0.5 * dt * k1.block[m];
    lindblad_rhs(tmp, g1, g2, k2);
    for (int m = 0; m <= n0; ++m) tmp.block[m] = rho.block[m] + 0.5 * dt * k2.block[m];
    lindblad_rhs(tmp, g1, g2, k3);
    for (int m = 0; m <= n0; ++m) tmp.block[m] = rho.block[m] + dt * k3.block[m];
    lindblad_rhs(tmp, g1, g2, k4);
    for (int m = 0; m <= n0; ++m) {
      rho.block[m] += (dt / 6.0) * (k1.block[m] + 2.0 * k2.block[m] + 2.0 * k3.block[m] + k4.block[m]);
      rho.block[m] = 0.5 * (rho.block[m] + rho.block[m].adjoint().eval());
    }
  };

  auto advance = [&](double a, double b) {
    for (const auto& seg : split_by_schedule(schedule, a, b)) {
      double remaining = seg.t1 - seg.t0;
      while (remaining > kTimeEps) {
        const double dt = std::min(dt_max, remaining);
        rk4_step(seg.g1, seg.g2, dt);
        remaining -= dt;
      }
    }
  };

  EnsembleSeries es;
  es.times = t_grid;
  es.n_trajectories = 0;  // exact moments, no sampling
  const std::size_t nt = t_grid.size();
  es.n1.resize(nt);
  es.n2.resize(nt);
  es.n1n2.resize(nt);
  es.atoms.resize(nt);
  es.rho12.resize(nt);
  es.se_n1.assign(nt, 0.0);
  es.se_n2.assign(nt, 0.0);
  es.se_n1n2.assign(nt, 0.0);
  es.se_atoms.assign(nt, 0.0);
  es.se_rho12_re.assign(nt, 0.0);
  es.se_rho12_im.assign(nt, 0.0);

  double t = 0.0;
  for (std::size_t k = 0; k < nt; ++k) {
    advance(t, t_grid[k]);
    t = t_grid[k];

    double trace = 0.0, en1 = 0.0, enn = 0.0, eat = 0.0;
    Complex er12 = 0.0;
    for (int m = 0; m <= n0; ++m) {
      const auto& r = rho.block[m];
      for (int a = 0; a <= m; ++a) {
        const double pa = r(a, a).real();
        trace += pa;
        en1 += pa * a;
        enn += pa * double(a) * double(m - a);
        eat += pa * m;
        if (a < m) er12 += r(a, a + 1) * std::sqrt(double(a + 1) * double(m - a));
      }
    }
    if (std::abs(trace - 1.0) > 1e-8) throw Error("master equation lost trace normalization");
    es.n1[k] = en1;
    es.n2[k] = eat - en1;
    es.n1n2[k] = enn;
    es.atoms[k] = eat;
    es.rho12[k] = er12;
  }
  return es;
}

}  // namespace dimer
