#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chiralq/constants.hpp"
#include "chiralq/ring.hpp"

using namespace chiralq;

namespace {
constexpr Branch kR = Branch::RightHanded;
constexpr Branch kL = Branch::LeftHanded;
}  // namespace

TEST_CASE("level energies") {
  CHECK(level_energy(0, kR, 0.0) == 0.0);
  CHECK(level_energy(1, kR, 0.25) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(level_energy(1, kL, 0.25) == doctest::Approx(-1.25).epsilon(1e-15));
  CHECK(chirality(kR) == +1);
  CHECK(chirality(kL) == -1);
}

TEST_CASE("persistent current per level") {
  CHECK(level_current(kR) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-15));
  CHECK(level_current(kL) == doctest::Approx(+1.0 / (2.0 * kPi)).epsilon(1e-15));

  // n-independence is exact: every enumerated level of a branch carries
  // the identical current
  SpectrumWindow w = enumerate_window(0.3, -10.5, 10.5);
  for (const Level& level : w.levels) {
    CHECK(level.current == level_current(level.branch));
  }

  // J = -dE/dPhi: central difference of the energy in Phi0 units over 2*pi
  const double delta = 1e-6;
  for (std::int64_t n : {-3LL, 0LL, 7LL}) {
    const double fd = -(level_energy(n, kR, 0.3 + delta) - level_energy(n, kR, 0.3 - delta)) /
                      (2.0 * delta) / (2.0 * kPi);
    CHECK(fd == doctest::Approx(level_current(kR)).epsilon(1e-6));
  }
}

TEST_CASE("current-energy consistency property") {
  std::mt19937_64 rng(7101);
  std::uniform_real_distribution<double> phis(-2.0, 2.0);
  const double delta = 1e-5;
  for (int i = 0; i < 50; ++i) {
    const double phi = phis(rng);
    for (Branch b : {kR, kL}) {
      for (std::int64_t n = -10; n <= 10; ++n) {
        const double fd = -(level_energy(n, b, phi + delta) - level_energy(n, b, phi - delta)) /
                          (2.0 * delta) / (2.0 * kPi);
        CHECK(fd == doctest::Approx(level_current(b)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("window enumeration") {
  SUBCASE("ten levels at zero flux") {
    SpectrumWindow w = enumerate_window(0.0, -2.5, 2.5);
    CHECK(w.levels.size() == 10);
    std::size_t right = 0, left = 0;
    for (const Level& level : w.levels) {
      CHECK(level.energy >= -2.5);
      CHECK(level.energy <= 2.5);
      CHECK(std::abs(level.n) <= 2);
      (level.branch == kR ? right : left) += 1;
    }
    CHECK(right == 5);
    CHECK(left == 5);
  }
  SUBCASE("empty gap window at half flux") {
    CHECK(enumerate_window(0.5, -0.4, 0.4).levels.empty());
  }
  SUBCASE("doubly degenerate pairs at half flux") {
    SpectrumWindow w = enumerate_window(0.5, -0.6, 0.6);
    REQUIRE(w.levels.size() == 4);
    CHECK(w.levels[0].energy == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(w.levels[1].energy == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(w.levels[2].energy == doctest::Approx(+0.5).epsilon(1e-15));
    CHECK(w.levels[3].energy == doctest::Approx(+0.5).epsilon(1e-15));
    // R sorts before L on exact ties
    CHECK(w.levels[0].branch == kR);
    CHECK(w.levels[1].branch == kL);
    CHECK(w.levels[2].branch == kR);
    CHECK(w.levels[3].branch == kL);
  }
  SUBCASE("edge membership keeps levels sitting exactly on the boundary") {
    SpectrumWindow w = enumerate_window(0.5, -0.5, 0.5);
    CHECK(w.levels.size() == 4);
  }
  SUBCASE("sorted ascending") {
    SpectrumWindow w = enumerate_window(0.37, -8.0, 8.0);
    for (std::size_t i = 1; i < w.levels.size(); ++i) {
      CHECK(w.levels[i].energy >= w.levels[i - 1].energy);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(enumerate_window(0.0, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_window(0.0, -3.1e9, 3.1e9), std::domain_error);
  }
}

TEST_CASE("kramers degeneracy") {
  CHECK(kramers_check(0.0, -5.5, 5.5).degenerate);
  CHECK(kramers_check(0.5, -5.5, 5.5).degenerate);
  CHECK_FALSE(kramers_check(0.3, -5.5, 5.5).degenerate);

  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> halves(-6, 6);
  for (int i = 0; i < 100; ++i) {
    CHECK(kramers_check(0.5 * halves(rng), -5.5, 5.5).degenerate);
    double phi = u(rng);
    while (std::abs(2.0 * phi - std::round(2.0 * phi)) < 1e-6) phi = u(rng);
    KramersReport report = kramers_check(phi, -5.5, 5.5);
    CHECK_FALSE(report.degenerate);
  }
}

TEST_CASE("spectral shift covariance") {
  // One added flux quantum relabels the ladder of either branch by one
  // step: E(n, b, phi + 1) = E(n + 1, b, phi). Dyadic flux ratios make the
  // identity exact in floating point as well as in exact arithmetic.
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> dyadic(0, (1 << 20) - 1);
  std::uniform_real_distribution<double> cont(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double phi = static_cast<double>(dyadic(rng)) / static_cast<double>(1 << 20);
    for (std::int64_t n = -5; n <= 5; ++n) {
      CHECK(level_energy(n, kR, phi + 1.0) == level_energy(n + 1, kR, phi));
      CHECK(level_energy(n, kL, phi + 1.0) == level_energy(n + 1, kL, phi));
    }
    // arbitrary flux: identical up to one rounding
    const double psi = cont(rng);
    for (std::int64_t n = -5; n <= 5; ++n) {
      CHECK(level_energy(n, kR, psi + 1.0) ==
            doctest::Approx(level_energy(n + 1, kR, psi)).epsilon(1e-12));
      CHECK(level_energy(n, kL, psi + 1.0) ==
            doctest::Approx(level_energy(n + 1, kL, psi)).epsilon(1e-12));
    }
  }
}
