#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chiralq/flux_program.hpp"
#include "chiralq/ring.hpp"

namespace chiralq {

// Filled-level bookkeeping. Right-handed modes with n <= n_right are
// occupied. The left branch energy -(n + phi) decreases with n, so deeper
// sea states have larger n: left-handed modes with n >= n_left are
// occupied. n_right and n_left are the indices of the topmost occupied
// level of each branch.
struct ChiralOccupation {
  std::int64_t n_right = 0;
  std::int64_t n_left = 0;
  double phi = 0.0;

  double fermi_energy_right() const;  // level_energy(n_right, R, phi)
  double fermi_energy_left() const;   // level_energy(n_left, L, phi)
  double chiral_chemical_potential() const;  // (E_F^R - E_F^L)/2
};

// Chiral magnetic current J = -mu5/pi in units of e (hbar = 1).
double cme_current_1d(double mu5);

// J = -mu5*B/(2*pi^2) in units of e^2: the 1+1D current times the
// transverse state density e*B/(2*pi).
double cme_current_3d(double mu5, double b_field);

// Sum of per-level persistent currents over the occupied states of both
// branches, truncated at the symmetric mode cutoff |n| <= cutoff. Units
// e*omega. At phi = 0 this equals cme_current_1d(mu5); at phi != 0 the
// hard mode count misses the phi-linear vacuum part of the current.
double occupation_sum_current(const ChiralOccupation& occ, std::int64_t cutoff);

// Periodic vacuum-energy profile: (phi - 1/2)^2 on (0, 1) extended with
// period 1. Values lie in [0, 1/4]; minima at half-integer flux, maxima
// 1/4 at integer flux.
double washboard_potential(double phi);

enum class CosineArgument { Literal, TwoPi };

// U0 * [washboard(phi) - beta*cos(arg)] with arg = phi (Literal) or
// 2*pi*phi (TwoPi). The literal cosine has period 2*pi in phi, so the
// total is not Phi0-periodic; TwoPi restores the period.
double total_potential(double phi, double u0, double beta,
                       CosineArgument cosine = CosineArgument::Literal);

// Regulated Dirac-sea energy sum S(eps) = sum over negative-energy levels
// of both branches of E*exp(-eps*|E|). Terms are dropped once the weight
// falls below 1e-18. Requires phi in (0,1) and eps in (0, 0.5].
double heat_kernel_sum(double phi, double epsilon);

struct HeatKernelFit {
  std::vector<double> epsilons;   // strictly decreasing, all > 0
  std::vector<double> raw_sums;   // S(eps)
  double divergence_coeff = 0.0;  // a in a/eps^2 (about -2)
  double finite_part = 0.0;       // b
  double slope_coeff = 0.0;       // c in c*eps
  double fit_residual = 0.0;      // max |S - model| over the inputs
  bool converged = false;
};

std::vector<double> default_heat_kernel_epsilons();  // {0.1, 0.05, 0.025, 0.0125}

// Least-squares extrapolation of S(eps) in the basis {1/eps^2, 1, eps}.
// The finite part obeys b(phi) - b(1/2) = (phi - 1/2)^2 up to the fit
// error. phi outside (0,1) raises std::domain_error (reduce by
// periodicity first); a residual above the threshold flags the result as
// unconverged instead of failing silently.
HeatKernelFit vacuum_energy_regularized(double phi, std::vector<double> epsilons,
                                        double residual_threshold = 1e-4);

// Independent regularization of the same sea sum: sharp cutoff
// |E| <= Lambda averaged over a squared-cosine window of integer width on
// [lambda0, lambda0 + width], with the window-averaged quadratic
// divergence subtracted. Integer width makes the window transform vanish
// on every harmonic of the level ladder, which puts the scheme in the
// same universality class as the smooth regulator.
double sharp_cutoff_finite_part(double phi, double lambda0 = 30.0, int width = 16);

// Raised by spectral_flow when a level that must cross the Fermi energy
// lies outside the tracking window.
class WindowOverflowError : public std::runtime_error {
 public:
  WindowOverflowError(Branch branch, std::int64_t n, const std::string& what)
      : std::runtime_error(what), branch(branch), n(n) {}
  Branch branch;
  std::int64_t n;
};

struct SpectralFlowSample {
  double t = 0.0;
  double phi = 0.0;
  double q_a = 0.0;  // <N_R - N_L> relative to t = 0
};

struct SpectralFlowResult {
  std::vector<SpectralFlowSample> samples;
  std::int64_t crossings_right = 0;  // net integer crossings through E = 0
  std::int64_t crossings_left = 0;
  double delta_q_a() const;
};

// Adiabatic spectral flow of the filled sea under a flux program. Level
// energies are linear in phi, so tracking is analytic: each branch's
// signed Fermi-surface flux is the integer crossing count plus the
// fractional boundary term, giving Q_A(t) - Q_A(0) = 2*(phi(t) - phi(0))
// in the expectation-value convention. The window [e_min, e_max] must
// contain every crossing level's full excursion.
SpectralFlowResult spectral_flow(const FluxProgram& program, double e_min, double e_max,
                                 int steps);

}  // namespace chiralq
