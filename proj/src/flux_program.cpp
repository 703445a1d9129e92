#include "chiralq/flux_program.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chiralq {

FluxProgram::FluxProgram(Kind kind, double duration)
    : kind_(std::move(kind)), duration_(duration) {
  if (!(duration_ >= 0.0)) {
    throw std::invalid_argument("FluxProgram: duration must be non-negative");
  }
}

FluxProgram FluxProgram::constant(double phi, double duration) {
  return FluxProgram(Constant{phi}, duration);
}

FluxProgram FluxProgram::linear_ramp(double phi_start, double phi_end, double duration) {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("FluxProgram: ramp duration must be positive");
  }
  return FluxProgram(LinearRamp{phi_start, phi_end}, duration);
}

FluxProgram FluxProgram::sinusoid(double phi_dc, double amplitude, double angular_frequency,
                                  double duration) {
  return FluxProgram(Sinusoid{phi_dc, amplitude, angular_frequency}, duration);
}

FluxProgram FluxProgram::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("FluxProgram: piecewise program needs at least 2 knots");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first)) {
      throw std::invalid_argument("FluxProgram: knot times must be strictly increasing");
    }
  }
  if (knots.front().first != 0.0) {
    throw std::invalid_argument("FluxProgram: first knot must be at t = 0");
  }
  double duration = knots.back().first;
  return FluxProgram(PiecewiseLinear{std::move(knots)}, duration);
}

double FluxProgram::phi(double t) const {
  t = std::clamp(t, 0.0, duration_);
  if (const auto* c = std::get_if<Constant>(&kind_)) {
    return c->phi;
  }
  if (const auto* r = std::get_if<LinearRamp>(&kind_)) {
    return r->phi_start + (r->phi_end - r->phi_start) * (t / duration_);
  }
  if (const auto* s = std::get_if<Sinusoid>(&kind_)) {
    return s->phi_dc + s->amplitude * std::sin(s->angular_frequency * t);
  }
  const auto& knots = std::get<PiecewiseLinear>(kind_).knots;
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double v, const auto& k) { return v < k.first; });
  if (it == knots.begin()) return knots.front().second;
  if (it == knots.end()) return knots.back().second;
  const auto& [t1, p1] = *(it - 1);
  const auto& [t2, p2] = *it;
  return p1 + (p2 - p1) * (t - t1) / (t2 - t1);
}

double FluxProgram::dphi_dt(double t) const {
  t = std::clamp(t, 0.0, duration_);
  if (std::holds_alternative<Constant>(kind_)) {
    return 0.0;
  }
  if (const auto* r = std::get_if<LinearRamp>(&kind_)) {
    return (r->phi_end - r->phi_start) / duration_;
  }
  if (const auto* s = std::get_if<Sinusoid>(&kind_)) {
    return s->amplitude * s->angular_frequency * std::cos(s->angular_frequency * t);
  }
  const auto& knots = std::get<PiecewiseLinear>(kind_).knots;
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double v, const auto& k) { return v < k.first; });
  if (it == knots.begin() || it == knots.end()) return 0.0;
  const auto& [t1, p1] = *(it - 1);
  const auto& [t2, p2] = *it;
  return (p2 - p1) / (t2 - t1);
}

double FluxProgram::emf_si(double t, const UnitSystem& units) const {
  // dPhi/dt_SI = Phi0 * dphi/dt_nat * omega
  return -dphi_dt(t) * units.constants().flux_quantum() * units.ring().omega;
}

std::pair<double, double> FluxProgram::drift_range() const {
  const double phi0 = phi(0.0);
  double lo = 0.0, hi = 0.0;
  auto visit = [&](double t) {
    double d = phi(t) - phi0;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  };
  visit(duration_);
  if (const auto* s = std::get_if<Sinusoid>(&kind_)) {
    // interior extrema of the sine
    if (s->angular_frequency != 0.0) {
      double quarter = kPi / (2.0 * std::abs(s->angular_frequency));
      for (double t = quarter; t < duration_; t += 2.0 * quarter) visit(t);
    }
  } else if (const auto* p = std::get_if<PiecewiseLinear>(&kind_)) {
    for (const auto& [t, unused] : p->knots) visit(t);
  }
  return {lo, hi};
}

}  // namespace chiralq
