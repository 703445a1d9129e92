#include "chiralq/measure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "chiralq/constants.hpp"

namespace chiralq {

namespace {

// |Hann-windowed DFT|^2 of a mean-removed trace at cyclic frequency f.
double spectral_power(const std::vector<double>& x, double dt, double f) {
  const std::size_t n = x.size();
  std::complex<double> acc(0.0, 0.0);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w =
        0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n - 1));
    const double phase = -2.0 * kPi * f * static_cast<double>(k) * dt;
    acc += (x[k] - mean) * w * std::polar(1.0, phase);
  }
  return std::norm(acc);
}

}  // namespace

double dominant_frequency(const std::vector<double>& values, double dt, double f_min,
                          double f_max) {
  if (values.size() < 8) {
    throw std::invalid_argument("dominant_frequency: trace too short");
  }
  if (!(dt > 0.0) || !(f_min >= 0.0) || !(f_max > f_min)) {
    throw std::invalid_argument("dominant_frequency: invalid search band");
  }

  // coarse scan, then golden-section refinement around the best bin
  const int coarse = 2000;
  double best_f = f_min;
  double best_p = -1.0;
  for (int i = 0; i <= coarse; ++i) {
    const double f = f_min + (f_max - f_min) * static_cast<double>(i) / coarse;
    const double p = spectral_power(values, dt, f);
    if (p > best_p) {
      best_p = p;
      best_f = f;
    }
  }
  const double df = (f_max - f_min) / coarse;
  double a = std::max(f_min, best_f - 2.0 * df);
  double b = std::min(f_max, best_f + 2.0 * df);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  for (int it = 0; it < 80; ++it) {
    if (spectral_power(values, dt, c) > spectral_power(values, dt, d)) {
      b = d;
      d = c;
      c = b - gr * (b - a);
    } else {
      a = c;
      c = d;
      d = a + gr * (b - a);
    }
  }
  return 0.5 * (a + b);
}

OscillationCount count_oscillations_until_decay(const std::vector<double>& times,
                                                const std::vector<double>& values,
                                                double baseline) {
  if (times.size() != values.size() || times.size() < 8) {
    throw std::invalid_argument("count_oscillations_until_decay: bad trace");
  }
  std::vector<double> x(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) x[i] = values[i] - baseline;

  OscillationCount out;
  double initial = 0.0;
  bool have_initial = false;
  std::size_t peaks = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const bool is_peak = x[i] > 0.0 && x[i] >= x[i - 1] && x[i] > x[i + 1];
    if (!is_peak) continue;
    if (!have_initial) {
      initial = x[i];
      have_initial = true;
    }
    if (x[i] < initial / std::exp(1.0)) {
      out.t_decay = times[i];
      break;
    }
    ++peaks;
  }
  if (!have_initial) {
    throw std::invalid_argument("count_oscillations_until_decay: no peaks found");
  }
  if (out.t_decay == 0.0) out.t_decay = times.back();  // never decayed below 1/e
  out.initial_amplitude = initial;
  out.oscillations = static_cast<double>(peaks);
  return out;
}

}  // namespace chiralq
