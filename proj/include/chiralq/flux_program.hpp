#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "chiralq/constants.hpp"

namespace chiralq {

// Time-dependent flux ratio phi(t) = Phi(t)/Phi0. Time is measured in
// natural units of 1/omega. phi(t) is continuous for every kind.
class FluxProgram {
 public:
  struct Constant {
    double phi = 0.0;
  };
  struct LinearRamp {
    double phi_start = 0.0;
    double phi_end = 0.0;
  };
  struct Sinusoid {
    double phi_dc = 0.0;
    double amplitude = 0.0;
    double angular_frequency = 0.0;  // rad per natural time
  };
  struct PiecewiseLinear {
    std::vector<std::pair<double, double>> knots;  // (t, phi), t strictly increasing
  };

  static FluxProgram constant(double phi, double duration);
  static FluxProgram linear_ramp(double phi_start, double phi_end, double duration);
  static FluxProgram sinusoid(double phi_dc, double amplitude, double angular_frequency,
                              double duration);
  // Duration is taken from the last knot.
  static FluxProgram piecewise_linear(std::vector<std::pair<double, double>> knots);

  double duration() const { return duration_; }
  double phi(double t) const;
  double dphi_dt(double t) const;

  // Faraday EMF -dPhi/dt in volts.
  double emf_si(double t, const UnitSystem& units) const;

  // Extremes of phi(t) - phi(0) over [0, duration], sampled at program
  // knots/extrema (exact for the supported kinds).
  std::pair<double, double> drift_range() const;

 private:
  using Kind = std::variant<Constant, LinearRamp, Sinusoid, PiecewiseLinear>;
  FluxProgram(Kind kind, double duration);

  Kind kind_;
  double duration_ = 0.0;
};

}  // namespace chiralq
