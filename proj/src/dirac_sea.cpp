#include "chiralq/dirac_sea.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chiralq {

namespace {

// exp(-eps*|E|) threshold below which sea terms are dropped
constexpr double kWeightFloor = 1e-18;

void require_open_unit_interval(double phi, const char* who) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw std::domain_error(std::string(who) +
                            ": phi must lie in (0,1); reduce by periodicity first");
  }
}

}  // namespace

double ChiralOccupation::fermi_energy_right() const {
  return level_energy(n_right, Branch::RightHanded, phi);
}

double ChiralOccupation::fermi_energy_left() const {
  return level_energy(n_left, Branch::LeftHanded, phi);
}

double ChiralOccupation::chiral_chemical_potential() const {
  return 0.5 * (fermi_energy_right() - fermi_energy_left());
}

double cme_current_1d(double mu5) { return -mu5 / kPi; }

double cme_current_3d(double mu5, double b_field) {
  // the 1+1D current times the transverse density of states e*B/(2*pi);
  // written this way so the two routes agree to the last bit
  return cme_current_1d(mu5) * (b_field / (2.0 * kPi));
}

double occupation_sum_current(const ChiralOccupation& occ, std::int64_t cutoff) {
  if (cutoff <= std::max(std::abs(occ.n_right), std::abs(occ.n_left))) {
    throw std::domain_error("occupation_sum_current: cutoff must exceed |N_R|, |N_L|");
  }
  double current = 0.0;
  for (std::int64_t n = -cutoff; n <= occ.n_right; ++n) {
    current += level_current(Branch::RightHanded);
  }
  for (std::int64_t n = occ.n_left; n <= cutoff; ++n) {
    current += level_current(Branch::LeftHanded);
  }
  return current;
}

double washboard_potential(double phi) {
  const double u = phi - std::floor(phi) - 0.5;
  return u * u;
}

double total_potential(double phi, double u0, double beta, CosineArgument cosine) {
  if (!(u0 > 0.0)) {
    throw std::domain_error("total_potential: U0 must be positive");
  }
  const double arg = cosine == CosineArgument::Literal ? phi : 2.0 * kPi * phi;
  return u0 * (washboard_potential(phi) - beta * std::cos(arg));
}

double heat_kernel_sum(double phi, double epsilon) {
  require_open_unit_interval(phi, "heat_kernel_sum");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::domain_error("heat_kernel_sum: epsilon must lie in (0, 0.5]");
  }
  const double e_max = -std::log(kWeightFloor) / epsilon;
  double sum = 0.0;
  // right-handed sea: |E| = k - phi, k >= 1
  for (std::int64_t k = 1;; ++k) {
    const double e = static_cast<double>(k) - phi;
    if (e > e_max) break;
    sum -= e * std::exp(-epsilon * e);
  }
  // left-handed sea: |E| = k + phi, k >= 0
  for (std::int64_t k = 0;; ++k) {
    const double e = static_cast<double>(k) + phi;
    if (e > e_max) break;
    sum -= e * std::exp(-epsilon * e);
  }
  return sum;
}

std::vector<double> default_heat_kernel_epsilons() {
  return {0.1, 0.05, 0.025, 0.0125};
}

HeatKernelFit vacuum_energy_regularized(double phi, std::vector<double> epsilons,
                                        double residual_threshold) {
  require_open_unit_interval(phi, "vacuum_energy_regularized");
  if (epsilons.size() < 3) {
    throw std::invalid_argument("vacuum_energy_regularized: need at least 3 regulator values");
  }
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] <= 0.5)) {
      throw std::domain_error("vacuum_energy_regularized: epsilons must lie in (0, 0.5]");
    }
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw std::invalid_argument("vacuum_energy_regularized: epsilons must be distinct");
    }
  }

  HeatKernelFit fit;
  fit.epsilons = epsilons;
  fit.raw_sums.reserve(epsilons.size());
  for (double eps : epsilons) {
    fit.raw_sums.push_back(heat_kernel_sum(phi, eps));
  }

  const auto n = static_cast<Eigen::Index>(epsilons.size());
  Eigen::MatrixXd basis(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eps = epsilons[static_cast<std::size_t>(i)];
    basis(i, 0) = 1.0 / (eps * eps);
    basis(i, 1) = 1.0;
    basis(i, 2) = eps;
    rhs(i) = fit.raw_sums[static_cast<std::size_t>(i)];
  }
  Eigen::Vector3d coeff = basis.colPivHouseholderQr().solve(rhs);
  fit.divergence_coeff = coeff(0);
  fit.finite_part = coeff(1);
  fit.slope_coeff = coeff(2);
  fit.fit_residual = (rhs - basis * coeff).cwiseAbs().maxCoeff();
  fit.converged = fit.fit_residual <= residual_threshold;
  return fit;
}

double sharp_cutoff_finite_part(double phi, double lambda0, int width) {
  require_open_unit_interval(phi, "sharp_cutoff_finite_part");
  if (!(lambda0 > 2.0) || width < 2) {
    throw std::domain_error("sharp_cutoff_finite_part: need lambda0 > 2 and width >= 2");
  }
  const double w = static_cast<double>(width);

  // Tail integral of the normalized squared-cosine window
  // (8/(3 w)) sin^4(pi (L - lambda0)/w) on [lambda0, lambda0 + w].
  auto tail = [&](double x) {
    if (x <= lambda0) return 1.0;
    if (x >= lambda0 + w) return 0.0;
    const double v = (x - lambda0) / w;
    const double cum = v - (2.0 / (3.0 * kPi)) * std::sin(2.0 * kPi * v) +
                       (1.0 / (12.0 * kPi)) * std::sin(4.0 * kPi * v);
    return 1.0 - cum;
  };

  double sum = 0.0;
  const auto k_max = static_cast<std::int64_t>(std::ceil(lambda0 + w + 1.0));
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const double e = static_cast<double>(k) - phi;
    sum -= e * tail(e);
  }
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double e = static_cast<double>(k) + phi;
    sum -= e * tail(e);
  }

  // window average of Lambda^2: lambda0^2 + lambda0 w + w^2 (1/3 - 5/(8 pi^2))
  const double quad =
      lambda0 * lambda0 + lambda0 * w + w * w * (1.0 / 3.0 - 5.0 / (8.0 * kPi * kPi));
  return sum + quad;
}

double SpectralFlowResult::delta_q_a() const {
  return samples.empty() ? 0.0 : samples.back().q_a;
}

SpectralFlowResult spectral_flow(const FluxProgram& program, double e_min, double e_max,
                                 int steps) {
  if (steps < 2) {
    throw std::invalid_argument("spectral_flow: steps must be >= 2");
  }
  if (!(e_min < 0.0 && e_max > 0.0)) {
    throw std::invalid_argument("spectral_flow: window must contain the Fermi energy 0");
  }

  const double phi0 = program.phi(0.0);
  const auto [drift_lo, drift_hi] = program.drift_range();

  // Every level that can cross E = 0 must stay inside the window for the
  // whole program. Right-handed crossing candidates start at
  // E0 = n + phi0 in [-drift_hi, -drift_lo] and sweep E0 + drift.
  const double tol = 1e-12;
  for (std::int64_t n = static_cast<std::int64_t>(std::ceil(-phi0 - drift_hi - tol));
       n <= static_cast<std::int64_t>(std::floor(-phi0 - drift_lo + tol)); ++n) {
    const double e0 = static_cast<double>(n) + phi0;
    if (e0 + drift_lo < e_min - tol || e0 + drift_hi > e_max + tol) {
      throw WindowOverflowError(
          Branch::RightHanded, n,
          "spectral_flow: level (R, n=" + std::to_string(n) +
              ") exits the tracking window; widen [e_min, e_max]");
    }
  }
  // Left-handed candidates start at E0 = -(n + phi0) in [drift_lo, drift_hi]
  // and sweep E0 - drift.
  for (std::int64_t n = static_cast<std::int64_t>(std::ceil(-phi0 - drift_hi - tol));
       n <= static_cast<std::int64_t>(std::floor(-phi0 - drift_lo + tol)); ++n) {
    const double e0 = -(static_cast<double>(n) + phi0);
    if (e0 - drift_hi < e_min - tol || e0 - drift_lo > e_max + tol) {
      throw WindowOverflowError(
          Branch::LeftHanded, n,
          "spectral_flow: level (L, n=" + std::to_string(n) +
              ") exits the tracking window; widen [e_min, e_max]");
    }
  }

  SpectralFlowResult result;
  result.samples.reserve(static_cast<std::size_t>(steps) + 1);
  const double duration = program.duration();
  const double floor0 = std::floor(phi0);
  const double frac0 = phi0 - floor0;
  for (int i = 0; i <= steps; ++i) {
    const double t = duration * static_cast<double>(i) / static_cast<double>(steps);
    const double phi_t = program.phi(t);
    // Signed Fermi-surface flux per branch: net integer ladder crossings
    // plus the fractional boundary term of the expectation-value
    // convention. An R level rises through E = 0 at every integer passage
    // of phi; the mirror L level sinks through it, so both branches
    // contribute the same signed flux to Q_A = N_R - N_L.
    const double crossings = std::floor(phi_t) - floor0;
    const double fractional = (phi_t - std::floor(phi_t)) - frac0;
    const double flux_right = crossings + fractional;
    const double flux_left = crossings + fractional;
    result.samples.push_back({t, phi_t, flux_right + flux_left});
  }
  const double phi_end = program.phi(duration);
  result.crossings_right =
      static_cast<std::int64_t>(std::floor(phi_end)) - static_cast<std::int64_t>(floor0);
  result.crossings_left = result.crossings_right;
  return result;
}

}  // namespace chiralq
