#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace benford::oracle {

// Density of k * U_1 * ... * U_n at x = k e^{-u} on a uniform u-grid, by
// repeated Mellin convolution with Unif(0, 1):
//   f_n(x) = int_x^k f_{n-1}(t) dt / t,
// which in u = ln(k / x) is a running integral. Cumulative Simpson on pairs of
// steps; odd nodes get a quadratic midpoint rule.
struct ConvolvedUniform {
  double k;
  double step;
  std::vector<std::vector<double>> levels;  // levels[n - 1][i] = f_n(k e^{-i step})

  ConvolvedUniform(int max_n, double k_, double max_u, int intervals) : k(k_) {
    if (intervals % 2) ++intervals;
    step = max_u / intervals;
    levels.emplace_back(intervals + 1, 1.0 / k);
    for (int n = 2; n <= max_n; ++n) {
      const auto& prev = levels.back();
      std::vector<double> next(prev.size(), 0.0);
      for (int i = 2; i <= intervals; i += 2) {
        next[i] = next[i - 2] + step / 3.0 * (prev[i - 2] + 4.0 * prev[i - 1] + prev[i]);
        // int_{i-2}^{i-1} of the parabola through the three nodes
        next[i - 1] = next[i - 2] + step / 12.0 * (5.0 * prev[i - 2] + 8.0 * prev[i - 1] - prev[i]);
      }
      levels.push_back(std::move(next));
    }
  }

  double at(int n, double x) const {
    const double u = std::log(k / x) / step;
    const auto i = static_cast<std::size_t>(std::floor(u));
    const auto& row = levels[n - 1];
    if (i + 1 >= row.size()) return row.back();
    const double w = u - static_cast<double>(i);
    // Cubic-free: grid is fine enough that linear interpolation is well under 1e-8.
    return row[i] * (1.0 - w) + row[i + 1] * w;
  }
};

// P(first digit of k U_1 ... U_n is d) in base B: -ln(X / k) ~ Gamma(n, 1).
inline double uniform_product_digit(int n, double k, int d, int base) {
  double total = 0.0;
  for (int j = -700; j <= 2; ++j) {
    const double lo = d * std::pow(static_cast<double>(base), j);
    const double hi = (d + 1) * std::pow(static_cast<double>(base), j);
    if (lo >= k) continue;
    const double u_hi = std::log(k / lo);
    const double u_lo = std::max(0.0, std::log(k / hi));
    total += boost::math::gamma_p(n, u_hi) - boost::math::gamma_p(n, u_lo);
  }
  return total;
}

// P(first digit of Exp(1) is d) in base B, summing decades.
inline double exponential_digit(int d, int base) {
  double total = 0.0;
  for (int j = -300; j <= 3; ++j) {
    const double p = std::pow(static_cast<double>(base), j);
    total += std::exp(-d * p) - std::exp(-(d + 1) * p);
  }
  return total;
}

// P(first digit of |Z| / sqrt 2 is d): the unit half-Gaussian has CDF erf.
inline double half_gaussian_digit(int d, int base) {
  double total = 0.0;
  for (int j = -300; j <= 3; ++j) {
    const double p = std::pow(static_cast<double>(base), j);
    total += std::erf((d + 1) * p) - std::erf(d * p);
  }
  return total;
}

}  // namespace benford::oracle
