#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chiralq/two_level.hpp"

using namespace chiralq;
using Eigen::Matrix2cd;
using Eigen::Vector2cd;

namespace {
double overlap(const Vector2cd& a, const Vector2cd& b) { return std::abs(a.dot(b)); }
}  // namespace

TEST_CASE("flux-to-detuning reduction") {
  CHECK_THROWS_AS(reduce_to_two_level(0.5, -0.1), std::invalid_argument);

  SUBCASE("degeneracy point") {
    TwoLevelSystem sys = reduce_to_two_level(0.5, 0.1);
    CHECK(sys.detuning == 0.0);
    Eigensystem es = eigensystem(sys);
    CHECK(es.energies[0] == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(es.energies[1] == doctest::Approx(+0.1).epsilon(1e-12));
    CHECK(sys.splitting() == doctest::Approx(0.2).epsilon(1e-12));
  }

  SUBCASE("no tunneling keeps the chirality eigenstates") {
    TwoLevelSystem sys = reduce_to_two_level(0.6, 0.0);
    CHECK(sys.detuning == doctest::Approx(0.2).epsilon(1e-12));
    Eigensystem es = eigensystem(sys);
    CHECK(es.energies[0] == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(es.energies[1] == doctest::Approx(+0.1).epsilon(1e-12));
    CHECK(overlap(es.states[0], Vector2cd(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(overlap(es.states[1], Vector2cd(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("avoided crossing splitting") {
    TwoLevelSystem sys = reduce_to_two_level(0.6, 0.1);
    CHECK(sys.splitting() == doctest::Approx(0.28284271247461901).epsilon(1e-12));
    CHECK(sys.splitting() == doctest::Approx(2.0 * std::sqrt(0.02)).epsilon(1e-12));
  }
}

TEST_CASE("eigensystem") {
  SUBCASE("qubit basis at zero detuning") {
    Eigensystem es = eigensystem(TwoLevelSystem{0.0, 1.0});
    CHECK(es.energies[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.energies[1] == doctest::Approx(+1.0).epsilon(1e-12));
    const Vector2cd symmetric = Vector2cd(1.0, 1.0) / std::sqrt(2.0);
    const Vector2cd antisymmetric = Vector2cd(1.0, -1.0) / std::sqrt(2.0);
    // |0> is the symmetric combination, up to a global phase
    CHECK(overlap(es.states[0], symmetric) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(overlap(es.states[1], antisymmetric) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("diagonal limit") {
    Eigensystem es = eigensystem(TwoLevelSystem{2.0, 0.0});
    CHECK(es.energies[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.energies[1] == doctest::Approx(+1.0).epsilon(1e-12));
    CHECK(overlap(es.states[1], Vector2cd(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("closed form") {
    Eigensystem es = eigensystem(TwoLevelSystem{1.0, 1.0});
    CHECK(es.energies[0] == doctest::Approx(-std::sqrt(1.25)).epsilon(1e-12));
    CHECK(es.energies[1] == doctest::Approx(+std::sqrt(1.25)).epsilon(1e-12));
  }

  SUBCASE("characteristic polynomial roots and orthonormality") {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> up(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
      TwoLevelSystem sys{u(rng), up(rng)};
      Eigensystem es = eigensystem(sys);
      const double root = std::hypot(0.5 * sys.detuning, sys.tunneling);
      CHECK(std::abs(es.energies[0] + root) <= 1e-12 * std::max(1.0, root));
      CHECK(std::abs(es.energies[1] - root) <= 1e-12 * std::max(1.0, root));
      CHECK(std::abs(es.states[0].norm() - 1.0) <= 1e-12);
      CHECK(std::abs(es.states[1].norm() - 1.0) <= 1e-12);
      CHECK(std::abs(es.states[0].dot(es.states[1])) <= 1e-12);
    }
  }
}

TEST_CASE("hamiltonian hermiticity") {
  std::mt19937_64 rng(117);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    TwoLevelSystem sys{u(rng), std::abs(u(rng))};
    Matrix2cd h = sys.hamiltonian();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("qubit state validation") {
  CHECK_THROWS_AS(QubitState::pure(Vector2cd(1.0, 0.1)), std::invalid_argument);
  QubitState pure = QubitState::pure(Vector2cd(1.0, 0.0));
  CHECK(pure.is_pure());
  CHECK(pure.populations()[0] == doctest::Approx(1.0));
  CHECK(pure.purity() == doctest::Approx(1.0).epsilon(1e-12));

  Matrix2cd mixed;
  mixed << 0.5, 0.0, 0.0, 0.5;
  QubitState rho = QubitState::density(mixed);
  CHECK_FALSE(rho.is_pure());
  CHECK(rho.norm_or_trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.purity() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.5).epsilon(1e-12));

  Matrix2cd bad_trace;
  bad_trace << 0.8, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(QubitState::density(bad_trace), std::invalid_argument);

  Matrix2cd not_hermitian;
  not_hermitian << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(QubitState::density(not_hermitian), std::invalid_argument);

  Matrix2cd negative;
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(QubitState::density(negative), std::invalid_argument);

  // pure |+> state as a density matrix
  Matrix2cd plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(QubitState::density(plus).purity() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("drive envelopes") {
  DriveProgram off = DriveProgram::off();
  CHECK(off.amplitude == 0.0);
  CHECK(off.envelope_value(3.0) == 1.0);

  const double pi = 3.14159265358979323846;
  DriveProgram pulse = DriveProgram::gaussian_pulse(pi, 10.0, 2.0, 50.0);
  CHECK(pulse.envelope_value(10.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pulse.envelope_value(10.0 + 2.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  // amplitude reproduces the requested area
  const double area = pulse.amplitude * 2.0 * std::sqrt(2.0 * pi);
  CHECK(area == doctest::Approx(pi).epsilon(1e-12));
  CHECK_THROWS_AS(DriveProgram::gaussian_pulse(1.0, 0.0, -1.0, 50.0), std::invalid_argument);
}
