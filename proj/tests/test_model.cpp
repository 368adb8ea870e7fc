#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dimer/model.hpp"
#include "test_helpers.hpp"

using namespace dimer;
using dimer::testing::fock_state;
using dimer::testing::random_point;
using dimer::testing::random_state;

TEST_CASE("parameter validation and Lambda") {
  CHECK_THROWS_AS(DimerParams(0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(DimerParams(3, -1.0, 1.0), Error);
  CHECK_THROWS_AS(DimerParams(3, 1.0, -1.0), Error);

  const DimerParams p(40, 10.0, 100.0 / 39.0);
  CHECK(p.lambda() == doctest::Approx(5.0).epsilon(1e-14));

  const DimerParams q = DimerParams::from_lambda(40, 10.0, 5.0);
  CHECK(q.interaction == doctest::Approx(100.0 / 39.0).epsilon(1e-14));

  // J = 0 is a usable limit
  const DimerParams uncoupled(8, 0.0, 2.0);
  CHECK(std::isinf(uncoupled.lambda()));
}

TEST_CASE("hamiltonian matrix elements") {
  SUBCASE("single atom: pure tunneling") {
    const auto h = build_hamiltonian(DimerParams(1, 10.0, 3.0));
    CHECK(h.diag(0) == 0.0);
    CHECK(h.diag(1) == 0.0);
    CHECK(h.sub(0) == doctest::Approx(-10.0));
  }
  SUBCASE("two atoms by hand") {
    const auto h = build_hamiltonian(DimerParams(2, 1.0, 1.0));
    CHECK(h.diag(0) == doctest::Approx(1.0));
    CHECK(h.diag(1) == doctest::Approx(0.0));
    CHECK(h.diag(2) == doctest::Approx(1.0));
    CHECK(h.sub(0) == doctest::Approx(-std::sqrt(2.0)));
    CHECK(h.sub(1) == doctest::Approx(-std::sqrt(2.0)));
  }
  SUBCASE("well-relabel symmetry: reversal conjugation leaves H unchanged") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
      const int N = 1 + int(rng() % 30);
      const auto h = build_hamiltonian(DimerParams(N, u(rng), u(rng)));
      const Eigen::MatrixXd m = h.dense();
      Eigen::MatrixXd rev(N + 1, N + 1);
      for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) rev(i, j) = m(N - i, N - j);
      CHECK((rev - m).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("coherent state construction") {
  SUBCASE("z = 1 concentrates all atoms in well 1") {
    const auto psi = coherent_state(DimerParams(9, 1.0, 0.0), PhasePoint(1.0, 2.5));
    CHECK(std::abs(psi.amplitude(9)) == doctest::Approx(1.0).epsilon(1e-14));
    for (int n = 0; n < 9; ++n) CHECK(std::abs(psi.amplitude(n)) == 0.0);
  }
  SUBCASE("symmetric single atom") {
    const auto psi = coherent_state(DimerParams(1, 1.0, 0.0), PhasePoint(0.0, 0.0));
    CHECK(psi.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(psi.amplitude(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("unit norm across the sphere, including large N") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const int N = 1 + int(rng() % 200);
      const auto psi = coherent_state(DimerParams(N, 1.0, 0.0), random_point(rng));
      CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-particle density matrix") {
  SUBCASE("Fock states have no coherence") {
    const auto rho = spdm(fock_state(6, 2));
    CHECK(rho.rho11 == doctest::Approx(2.0));
    CHECK(rho.rho22 == doctest::Approx(4.0));
    CHECK(std::abs(rho.rho12) == 0.0);
  }
  SUBCASE("balanced coherent state, N = 2, by hand") {
    const auto rho = spdm(coherent_state(DimerParams(2, 1.0, 0.0), PhasePoint(0.0, 0.0)));
    CHECK(rho.rho11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.rho22 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.rho12.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.rho12.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("NOON state coherence vanishes") {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(3);
    amps(0) = amps(2) = 1.0;
    const auto rho = spdm(StateVector(std::move(amps)));
    CHECK(rho.rho11 == doctest::Approx(1.0));
    CHECK(rho.rho22 == doctest::Approx(1.0));
    CHECK(std::abs(rho.rho12) == 0.0);
  }
  SUBCASE("trace N, Hermitian PSD for random states") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const int N = 1 + int(rng() % 40);
      const auto rho = spdm(random_state(N, rng));
      CHECK(rho.trace() == doctest::Approx(double(N)).epsilon(1e-10));
      CHECK(rho.rho11 >= 0.0);
      CHECK(rho.rho22 >= 0.0);
      // PSD for the 2x2: determinant non-negative
      CHECK(rho.rho11 * rho.rho22 - std::norm(rho.rho12) >= -1e-10 * N * N);
    }
  }
}

TEST_CASE("condensate fraction") {
  SUBCASE("coherent states are pure condensates") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const int N = 1 + int(rng() % 60);
      const auto psi = coherent_state(DimerParams(N, 1.0, 0.0), random_point(rng));
      CHECK(condensate_fraction(spdm(psi), N) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("Fock states") {
    CHECK(condensate_fraction(spdm(fock_state(8, 2)), 8) == doctest::Approx(6.0 / 8.0));
    CHECK(condensate_fraction(spdm(fock_state(8, 8)), 8) == doctest::Approx(1.0));
  }
  SUBCASE("NOON state sits at the minimum 1/2") {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(5);
    amps(0) = amps(4) = 1.0;
    CHECK(condensate_fraction(spdm(StateVector(std::move(amps))), 4) == doctest::Approx(0.5));
  }
  SUBCASE("bounded in [1/2, 1] for random states") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
      const int N = 1 + int(rng() % 50);
      const double c = condensate_fraction(spdm(random_state(N, rng)), N);
      CHECK(c >= 0.5 - 1e-12);
      CHECK(c <= 1.0 + 1e-12);
    }
  }
  SUBCASE("empty system is an error") {
    CHECK_THROWS_AS(condensate_fraction(spdm(fock_state(2, 1)), 0.0), Error);
  }
}

TEST_CASE("EPR observable") {
  SUBCASE("Fock states: -n(N-n)") {
    CHECK(epr(fock_state(6, 2)) == doctest::Approx(-8.0));
    CHECK(epr(fock_state(6, 6)) == doctest::Approx(0.0));
  }
  SUBCASE("coherent states: N(1-z^2)/4") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      const int N = 1 + int(rng() % 60);
      const auto pt = random_point(rng);
      const auto psi = coherent_state(DimerParams(N, 1.0, 0.0), pt);
      CHECK(epr(psi) == doctest::Approx(N * (1.0 - pt.z * pt.z) / 4.0).epsilon(1e-9));
    }
  }
  SUBCASE("the paper's initial state") {
    const auto psi = coherent_state(DimerParams(40, 10.0, 100.0 / 39.0),
                                    PhasePoint(0.95, std::numbers::pi));
    CHECK(epr(psi) == doctest::Approx(0.975).epsilon(1e-9));
  }
}

TEST_CASE("imbalance and phase") {
  SUBCASE("coherent round trip") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      const int N = 2 + int(rng() % 50);
      const auto pt = random_point(rng, 0.95);
      const auto out = imbalance_and_phase(spdm(coherent_state(DimerParams(N, 1.0, 0.0), pt)));
      CHECK(out.z == doctest::Approx(pt.z).epsilon(1e-10));
      REQUIRE(out.phi.has_value());
      const double dphi = std::remainder(*out.phi - pt.phi, 2.0 * std::numbers::pi);
      CHECK(dphi == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
  SUBCASE("Fock state phase is undefined") {
    const auto out = imbalance_and_phase(spdm(fock_state(10, 7)));
    CHECK(out.z == doctest::Approx(4.0 / 10.0));
    CHECK(!out.phi.has_value());
  }
  SUBCASE("phase pi survives the round trip") {
    const auto out = imbalance_and_phase(
        spdm(coherent_state(DimerParams(12, 1.0, 0.0), PhasePoint(0.0, std::numbers::pi))));
    CHECK(out.z == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(out.phi.has_value());
    CHECK(*out.phi == doctest::Approx(std::numbers::pi).epsilon(1e-10));
  }
}

TEST_CASE("angle wrapping") {
  CHECK(wrap_angle(2.0 * std::numbers::pi) == 0.0);
  CHECK(wrap_angle(-0.5) == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
}
