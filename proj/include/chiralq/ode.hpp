#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chiralq {

// Raised when the adaptive stepper cannot satisfy the tolerance without
// the step size underflowing; the message carries a suggested looser
// tolerance.
class AccuracyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-13;
  double max_step = 0.0;       // 0 = unlimited
  bool fixed_step = false;     // disable error control (convergence studies)
  double fixed_step_size = 1e-3;
};

// Embedded Dormand-Prince 5(4) with a standard step controller. State is
// any Eigen-style type supporting linear combinations and
// cwiseAbs().maxCoeff(); Rhs is f(t, y) -> dy/dt.
template <class State, class Rhs>
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, const IntegrationOptions& opts, double t0, State y0)
      : rhs_(std::move(rhs)), opts_(opts), t_(t0), y_(std::move(y0)) {
    k1_ = rhs_(t_, y_);
    h_ = opts_.fixed_step ? opts_.fixed_step_size : opts_.initial_step;
  }

  double time() const { return t_; }
  const State& state() const { return y_; }

  void advance_to(double t_target) {
    if (opts_.fixed_step) {
      advance_fixed(t_target);
      return;
    }
    while (t_ < t_target) {
      double h = std::min(h_, t_target - t_);
      if (opts_.max_step > 0.0) h = std::min(h, opts_.max_step);
      State y_new = y_;
      State k_last = k1_;
      double err = step(h, y_new, k_last);
      if (err <= 1.0) {
        t_ += h;
        y_ = y_new;
        k1_ = k_last;  // FSAL
        double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h_ = h * std::clamp(grow, 0.2, 5.0);
      } else {
        h_ = h * std::max(0.1, 0.9 * std::pow(err, -0.2));
        if (h_ < opts_.min_step) {
          throw AccuracyError(
              "step size underflow at t = " + std::to_string(t_) +
              "; suggested: loosen tolerance to rtol >= " +
              std::to_string(opts_.rtol * 100.0) + " or raise min_step");
        }
      }
    }
  }

 private:
  void advance_fixed(double t_target) {
    const double h0 = opts_.fixed_step_size;
    while (t_ < t_target - 1e-15 * std::abs(t_target)) {
      double h = std::min(h0, t_target - t_);
      State y_new = y_;
      State k_last = k1_;
      step(h, y_new, k_last);
      t_ += h;
      y_ = y_new;
      k1_ = k_last;
    }
    t_ = t_target;
  }

  // One trial step of size h; writes the 5th-order solution into y_out and
  // the FSAL stage into k_last; returns the scaled error norm.
  double step(double h, State& y_out, State& k_last) {
    const State& y = y_;
    State k2 = rhs_(t_ + h * (1.0 / 5.0), State(y + h * (1.0 / 5.0) * k1_));
    State k3 = rhs_(t_ + h * (3.0 / 10.0),
                    State(y + h * ((3.0 / 40.0) * k1_ + (9.0 / 40.0) * k2)));
    State k4 = rhs_(t_ + h * (4.0 / 5.0),
                    State(y + h * ((44.0 / 45.0) * k1_ - (56.0 / 15.0) * k2 +
                                   (32.0 / 9.0) * k3)));
    State k5 = rhs_(
        t_ + h * (8.0 / 9.0),
        State(y + h * ((19372.0 / 6561.0) * k1_ - (25360.0 / 2187.0) * k2 +
                       (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4)));
    State k6 = rhs_(t_ + h,
                    State(y + h * ((9017.0 / 3168.0) * k1_ - (355.0 / 33.0) * k2 +
                                   (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 -
                                   (5103.0 / 18656.0) * k5)));
    y_out = y + h * ((35.0 / 384.0) * k1_ + (500.0 / 1113.0) * k3 +
                     (125.0 / 192.0) * k4 - (2187.0 / 6784.0) * k5 +
                     (11.0 / 84.0) * k6);
    k_last = rhs_(t_ + h, y_out);
    // difference between the 5th- and embedded 4th-order solutions
    State err_vec = h * ((71.0 / 57600.0) * k1_ - (71.0 / 16695.0) * k3 +
                         (71.0 / 1920.0) * k4 - (17253.0 / 339200.0) * k5 +
                         (22.0 / 525.0) * k6 - (1.0 / 40.0) * k_last);
    double scale = opts_.atol +
                   opts_.rtol * std::max(y.cwiseAbs().maxCoeff(),
                                         y_out.cwiseAbs().maxCoeff());
    return err_vec.cwiseAbs().maxCoeff() / scale;
  }

  Rhs rhs_;
  IntegrationOptions opts_;
  double t_;
  State y_;
  State k1_;
  double h_ = 1e-3;
};

}  // namespace chiralq
