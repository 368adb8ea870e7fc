#include <cmath>
#include <numbers>

#include "doctest.h"

#include "dimer/meanfield.hpp"

using namespace dimer;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("classical energy") {
  CHECK(h_mf({0.0, 0.0}, 3.7) == doctest::Approx(-1.0));
  CHECK(h_mf({0.0, kPi}, 0.2) == doctest::Approx(1.0));
  const double z_star = std::sqrt(1.0 - 1.0 / 25.0);
  CHECK(h_mf({z_star, kPi}, 5.0) == doctest::Approx(2.6).epsilon(1e-12));
  CHECK(h_mf({-z_star, kPi}, 5.0) == doctest::Approx(2.6).epsilon(1e-12));
}

TEST_CASE("equations of motion") {
  const DimerParams p = DimerParams::from_lambda(40, 1.0, 3.0);

  SUBCASE("fixed points are stationary") {
    for (const auto& fp : fixed_points(p.lambda())) {
      const auto d = eom({fp.z, fp.phi}, p);
      CHECK(std::abs(d.dz_dt) <= 1e-12);
      CHECK(std::abs(d.dphi_dt) <= 1e-12);
    }
  }
  SUBCASE("direct substitution at (0, pi/2)") {
    const auto d = eom({0.0, kPi / 2.0}, p);
    CHECK(d.dz_dt == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(d.dphi_dt == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("poles are singular") {
    CHECK_THROWS_AS(eom({1.0, 0.0}, p), Error);
    CHECK_THROWS_AS(eom({-1.0, 2.0}, p), Error);
  }
  SUBCASE("numerically linearized frequency matches the closed form") {
    for (const double lambda : {1.5, 2.0, 5.0, 10.0}) {
      const DimerParams q = DimerParams::from_lambda(40, 10.0, lambda);
      const double z_star = std::sqrt(1.0 - 1.0 / (lambda * lambda));
      const double eps = 1e-6;
      // Jacobian by central differences about the self-trapped point
      auto dz = [&](double z, double phi) { return eom({z, phi}, q).dz_dt; };
      auto dphi = [&](double z, double phi) { return eom({z, phi}, q).dphi_dt; };
      const double a11 = (dz(z_star + eps, kPi) - dz(z_star - eps, kPi)) / (2 * eps);
      const double a12 = (dz(z_star, kPi + eps) - dz(z_star, kPi - eps)) / (2 * eps);
      const double a21 = (dphi(z_star + eps, kPi) - dphi(z_star - eps, kPi)) / (2 * eps);
      const double a22 = (dphi(z_star, kPi + eps) - dphi(z_star, kPi - eps)) / (2 * eps);
      const double omega_sq = -(a11 * a22 - a12 * a21 - a11 * a11);  // trace is ~0
      const double omega = std::sqrt(std::abs(a12 * a21));
      (void)omega_sq;
      const double expected = 2.0 * q.tunneling * std::sqrt(lambda * lambda - 1.0);
      CHECK(omega == doctest::Approx(expected).epsilon(1e-6));
      CHECK(std::abs(a11) <= 1e-4 * expected);
      CHECK(std::abs(a22) <= 1e-4 * expected);
      // and the closed form in Hz
      CHECK(f_mf(q) == doctest::Approx(expected / (2.0 * kPi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("fixed point catalogue across the pitchfork") {
  SUBCASE("below the bifurcation") {
    const auto fps = fixed_points(0.5);
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].stability == Stability::stable);
    CHECK(fps[1].stability == Stability::stable);
    CHECK(fps[1].z == 0.0);
    CHECK(fps[1].phi == doctest::Approx(kPi));
  }
  SUBCASE("at the bifurcation") {
    const auto fps = fixed_points(1.0);
    REQUIRE(fps.size() == 2);
    CHECK(fps[1].stability == Stability::marginal);
  }
  SUBCASE("above the bifurcation") {
    const auto fps = fixed_points(5.0);
    REQUIRE(fps.size() == 4);
    CHECK(fps[1].stability == Stability::unstable);
    const double expected = 2.0 * std::sqrt(6.0) / 5.0;  // 0.9798
    CHECK(fps[2].z == doctest::Approx(expected).epsilon(1e-12));
    CHECK(fps[3].z == doctest::Approx(-expected).epsilon(1e-12));
    CHECK(fps[2].stability == Stability::stable);
  }
  SUBCASE("strong coupling pushes the branch to the poles") {
    const auto fps = fixed_points(1e6);
    CHECK(fps[2].z > 0.999999);
  }
}

TEST_CASE("mean-field frequency") {
  CHECK(f_mf(DimerParams::from_lambda(10, 3.0, 1.0)) == doctest::Approx(0.0));
  CHECK(f_mf(DimerParams::from_lambda(40, 10.0, 5.0)) ==
        doctest::Approx(std::sqrt(24.0) * 10.0 / kPi).epsilon(1e-12));   // 15.5939 Hz
  CHECK(f_mf(DimerParams::from_lambda(40, 1.0, 2.0)) ==
        doctest::Approx(std::sqrt(3.0) / kPi).epsilon(1e-12));           // 0.5513 Hz
  CHECK_THROWS_AS(f_mf(DimerParams::from_lambda(40, 1.0, 0.5)), Error);
}

TEST_CASE("trajectory integration") {
  const DimerParams p = DimerParams::from_lambda(40, 10.0, 5.0);
  const double z_star = std::sqrt(1.0 - 1.0 / 25.0);

  SUBCASE("a stable fixed point stays put") {
    const auto traj = integrate_meanfield({z_star, kPi}, p, {0.5, 1.0, 2.0});
    for (const auto& s : traj) {
      CHECK(s.z == doctest::Approx(z_star).epsilon(1e-10));
      CHECK(s.phi == doctest::Approx(kPi).epsilon(1e-10));
    }
  }
  SUBCASE("small oscillation at the linearized period, energy conserved") {
    const MeanFieldState start{z_star - 0.01, kPi};
    const double period = 1.0 / f_mf(p);
    std::vector<double> t_grid;
    for (int i = 1; i <= 100; ++i) t_grid.push_back(period * i / 100.0);
    const auto traj = integrate_meanfield(start, p, t_grid);

    const double e0 = h_mf(start, p.lambda());
    for (const auto& s : traj) {
      CHECK(h_mf(s, p.lambda()) == doctest::Approx(e0).epsilon(1e-8));
    }
    // after one linearized period the state is back near the start
    CHECK(traj.back().z == doctest::Approx(start.z).epsilon(5e-4));
    const double dphi = std::remainder(traj.back().phi - start.phi, 2.0 * kPi);
    CHECK(std::abs(dphi) <= 2e-3);
  }
  SUBCASE("separatrix flow into the pole aborts") {
    const DimerParams free_particle(40, 1.0, 0.0);
    CHECK_THROWS_AS(integrate_meanfield({0.0, kPi / 2.0}, free_particle, {1.0}), Error);
  }
}
