// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mqft/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "mqft/rng.hpp"

namespace mqft {

double fringe_fraction(double visibility, double v_pi, double phase_offset,
                       double voltage) {
  return 0.5 * (1.0 + visibility * std::cos(std::numbers::pi * voltage / v_pi +
                                            phase_offset));
}

FringeScan simulate_fringe_scan(double visibility, double v_pi,
                                double phase_offset,
                                std::span<const double> voltages,
                                int pulses_per_point, std::mt19937_64& rng) {
  if (pulses_per_point < 1) {
    throw std::invalid_argument("simulate_fringe_scan: need >= 1 pulse/point");
  }
  FringeScan scan;
  scan.voltages.assign(voltages.begin(), voltages.end());
  scan.counts.reserve(voltages.size());
  scan.pulses_per_point = pulses_per_point;
  for (double v : voltages) {
    const double f = fringe_fraction(visibility, v_pi, phase_offset, v);
    int clicks = 0;
    for (int i = 0; i < pulses_per_point; ++i) {
      if (random_bernoulli(rng, f)) ++clicks;
    }
    scan.counts.push_back(static_cast<double>(clicks));
  }
  return scan;
}

namespace {

struct LinearFit {
  double level = 0.0;      // A
  double cos_amp = 0.0;    // P
  double sin_amp = 0.0;    // Q
  double residual = 0.0;
};

// For a fixed period, the model A + P cos(pi V/w) + Q sin(pi V/w) is linear
// in (A, P, Q); solve the normal equations on the click fractions.
LinearFit solve_at_period(const FringeScan& scan, double w) {
  const std::size_t m = scan.voltages.size();
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < m; ++i) {
    const double phase = std::numbers::pi * scan.voltages[i] / w;
    const Eigen::Vector3d row(1.0, std::cos(phase), std::sin(phase));
    gram += row * row.transpose();
    rhs += row * (scan.counts[i] / scan.pulses_per_point);
  }
  const Eigen::Vector3d sol = gram.ldlt().solve(rhs);

  LinearFit fit;
  fit.level = sol(0);
  fit.cos_amp = sol(1);
  fit.sin_amp = sol(2);
  for (std::size_t i = 0; i < m; ++i) {
    const double phase = std::numbers::pi * scan.voltages[i] / w;
    const double model =
        sol(0) + sol(1) * std::cos(phase) + sol(2) * std::sin(phase);
    const double d = scan.counts[i] / scan.pulses_per_point - model;
    fit.residual += d * d;
  }
  return fit;
}

}  // namespace

FringeFit fit_fringe(const FringeScan& scan) {
  if (scan.voltages.size() != scan.counts.size()) {
    throw std::invalid_argument("fit_fringe: voltage/count size mismatch");
  }
  if (scan.voltages.size() < 8) {
    throw std::invalid_argument("fit_fringe: need at least 8 scan points");
  }
  if (scan.pulses_per_point <= 0.0) {
    throw std::invalid_argument("fit_fringe: pulses_per_point must be > 0");
  }
  const auto [lo_it, hi_it] =
      std::minmax_element(scan.voltages.begin(), scan.voltages.end());
  const double span = *hi_it - *lo_it;
  if (span <= 0.0) {
    throw std::runtime_error("fit_fringe: degenerate scan, zero voltage span");
  }

  // Locate the period on a grid, then polish by golden section.
  const double w_lo = span / 8.0;
  const double w_hi = 2.0 * span;
  const int grid = 512;
  double best_w = w_lo;
  double best_res = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double w = w_lo + (w_hi - w_lo) * i / grid;
    const double res = solve_at_period(scan, w).residual;
    if (res < best_res) {
      best_res = res;
      best_w = w;
    }
  }
  const double step = (w_hi - w_lo) / grid;
  double a = std::max(w_lo, best_w - step);
  double b = std::min(w_hi, best_w + step);
  const double gold = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gold * (b - a);
  double x2 = a + gold * (b - a);
  double f1 = solve_at_period(scan, x1).residual;
  double f2 = solve_at_period(scan, x2).residual;
  for (int i = 0; i < 120 && (b - a) > 1e-13 * b; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gold * (b - a);
      f1 = solve_at_period(scan, x1).residual;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gold * (b - a);
      f2 = solve_at_period(scan, x2).residual;
    }
  }
  const double w = 0.5 * (a + b);
  const LinearFit lin = solve_at_period(scan, w);

  if (!std::isfinite(lin.residual) || lin.level <= 0.0) {
    throw std::runtime_error(
        "fit_fringe: fit did not converge (level " +
        std::to_string(lin.level) + ", residual " +
        std::to_string(lin.residual) + ")");
  }

  FringeFit fit;
  fit.v_pi = w;
  fit.visibility = std::hypot(lin.cos_amp, lin.sin_amp) / lin.level;
  fit.phase_offset = std::atan2(-lin.sin_amp, lin.cos_amp);
  fit.residual = lin.residual;
  return fit;
}

}  // namespace mqft
