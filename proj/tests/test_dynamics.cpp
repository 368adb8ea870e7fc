#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dimer/dynamics.hpp"
#include "test_helpers.hpp"

using namespace dimer;
using dimer::testing::fock_state;
using dimer::testing::random_state;

namespace {

const DimerParams kFigureParams(40, 10.0, 100.0 / 39.0);

std::vector<double> uniform_grid(double t0, double t1, double dt) {
  std::vector<double> g;
  for (double t = t0; t <= t1 + 1e-12; t += dt) g.push_back(t);
  return g;
}

}  // namespace

TEST_CASE("spectral propagation basics") {
  const auto eig = diagonalize(kFigureParams);
  const auto psi0 = coherent_state(kFigureParams, PhasePoint(0.95, std::numbers::pi));

  SUBCASE("t = 0 is the identity") {
    const auto psi = evolve_spectral(psi0, eig, 0.0);
    CHECK((psi.amplitudes() - psi0.amplitudes()).norm() <= 1e-12);
  }
  SUBCASE("norm, composition, reversal, energy") {
    const auto h = build_hamiltonian(kFigureParams);
    const double e0 = energy_expectation(h, psi0);
    const auto a = evolve_spectral(psi0, eig, 0.37);
    CHECK(a.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(energy_expectation(h, a) == doctest::Approx(e0).epsilon(1e-9));

    const auto b = evolve_spectral(a, eig, 0.63);
    const auto direct = evolve_spectral(psi0, eig, 1.0);
    CHECK((b.amplitudes() - direct.amplitudes()).norm() <= 1e-10);

    const auto back = evolve_spectral(a, eig, -0.37);
    CHECK((back.amplitudes() - psi0.amplitudes()).norm() <= 1e-10);
  }
  SUBCASE("eigenstates are stationary") {
    const StateVector psi(eig.eigenvectors.col(3).cast<Complex>());
    const auto series = observable_series(psi, eig, uniform_grid(0.0, 1.0, 0.1));
    for (std::size_t i = 1; i < series.size(); ++i) {
      CHECK(series.z[i] == doctest::Approx(series.z[0]).epsilon(1e-10));
      CHECK(series.condensate[i] == doctest::Approx(series.condensate[0]).epsilon(1e-10));
      CHECK(series.epr[i] == doctest::Approx(series.epr[0]).epsilon(1e-10));
    }
  }
}

TEST_CASE("RK4 cross-validates the spectral propagator") {
  SUBCASE("identity at t = 0") {
    const auto psi0 = coherent_state(DimerParams(6, 2.0, 1.0), PhasePoint(0.3, 1.0));
    const auto psi = evolve_rk4(psi0, DimerParams(6, 2.0, 1.0), 0.0);
    CHECK((psi.amplitudes() - psi0.amplitudes()).norm() <= 1e-12);
  }
  SUBCASE("single-atom Rabi oscillation") {
    const DimerParams p(1, 10.0, 0.0);
    const auto psi0 = fock_state(1, 1);
    for (const double t : {0.02, 0.05, 0.011}) {
      const auto psi = evolve_rk4(psi0, p, t);
      const double prob = std::norm(psi.amplitude(1));
      CHECK(prob == doctest::Approx(std::pow(std::cos(10.0 * t), 2)).epsilon(1e-8));
    }
  }
  SUBCASE("agreement at the figure parameters, t = 1 s") {
    const auto eig = diagonalize(kFigureParams);
    const auto psi0 = coherent_state(kFigureParams, PhasePoint(0.95, std::numbers::pi));
    const auto a = evolve_rk4(psi0, kFigureParams, 1.0);
    const auto b = evolve_spectral(psi0, eig, 1.0);
    CHECK((a.amplitudes() - b.amplitudes()).norm() <= 1e-6);
  }
  SUBCASE("oversized steps are rejected") {
    const auto psi0 = coherent_state(kFigureParams, PhasePoint(0.5, 0.0));
    CHECK_THROWS_AS(evolve_rk4(psi0, kFigureParams, 1.0, 5e-3), Error);
  }
}

TEST_CASE("power spectrum") {
  SUBCASE("pure cosine") {
    std::vector<double> t, x;
    for (int i = 0; i < 1000; ++i) {
      t.push_back(0.01 * i);
      x.push_back(std::cos(2.0 * std::numbers::pi * 3.0 * 0.01 * i));
    }
    const auto sp = power_spectrum(t, x);
    REQUIRE(!sp.peaks.empty());
    CHECK(sp.peaks[0].frequency == doctest::Approx(3.0).epsilon(sp.resolution));
    CHECK(sp.resolution == doctest::Approx(0.1));
  }
  SUBCASE("constant series has no peak") {
    std::vector<double> t, x;
    for (int i = 0; i < 64; ++i) {
      t.push_back(0.1 * i);
      x.push_back(2.5);
    }
    const auto sp = power_spectrum(t, x);
    for (const auto& p : sp.peaks) CHECK(p.power <= 1e-20);
  }
  SUBCASE("non-uniform sampling is rejected") {
    std::vector<double> t, x;
    for (int i = 0; i < 32; ++i) {
      t.push_back(0.1 * i);
      x.push_back(double(i % 3));
    }
    t[20] += 0.03;
    CHECK_THROWS_AS(power_spectrum(t, x), Error);
  }
  SUBCASE("too few samples") {
    std::vector<double> t{0, 1, 2}, x{0, 1, 0};
    CHECK_THROWS_AS(power_spectrum(t, x), Error);
  }
}

TEST_CASE("condensate fraction spectrum shows the three beats") {
  const auto eig = diagonalize(kFigureParams);
  const auto psi0 = coherent_state(kFigureParams, PhasePoint(0.95, std::numbers::pi));
  const auto series = observable_series(psi0, eig, uniform_grid(0.0, 7.99, 0.01));
  const auto sp = power_spectrum(series.times, series.condensate);

  const auto beats = beats_near_fixed_point(eig);
  CHECK(sp.strongest_in(14.0, 15.2).frequency == doctest::Approx(beats.f_mid).epsilon(0.005));
  CHECK(sp.strongest_in(15.2, 16.0).frequency == doctest::Approx(beats.f_fast).epsilon(0.005));
  CHECK(sp.strongest_in(29.5, 31.0).frequency == doctest::Approx(beats.f_sum).epsilon(0.005));

  // slow envelope of the large-amplitude oscillation
  const double slow = sp.strongest_in(0.4, 1.3).frequency;
  CHECK(slow >= 0.83);
  CHECK(slow <= 0.93);
}

TEST_CASE("level truncation: three levels carry the dynamics, two lose the envelope") {
  const auto eig = diagonalize(kFigureParams);
  const auto psi0 = coherent_state(kFigureParams, PhasePoint(0.95, std::numbers::pi));
  const auto grid = uniform_grid(0.0, 4.0, 0.01);
  const auto full = observable_series(psi0, eig, grid);
  const auto three = observable_series(truncate_to_top_levels(psi0, eig, 3), eig, grid);
  const auto two = observable_series(truncate_to_top_levels(psi0, eig, 2), eig, grid);

  double dev3 = 0.0, dev2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dev3 = std::max(dev3, std::abs(three.epr[i] - full.epr[i]));
    dev2 = std::max(dev2, std::abs(two.epr[i] - full.epr[i]));
  }
  CHECK(dev3 <= 0.05);  // visually indistinguishable
  CHECK(dev2 >= 0.5);   // slow oscillation gone
}
