#pragma once

// Reference computations for the rigorous bounds: brute-force series, plain
// quadrature and exhaustive parameter scans.

#include <cmath>
#include <vector>

#include "oracles/eta_marginal_oracle.hpp"

namespace oracle {

// 2 sum_{l=4,6,...,lmax} l^2 x^l, summed directly in long double.
inline double peierls_series(double epsilon, double connective, long lmax = 2'000'000) {
  const long double x = static_cast<long double>(connective) * epsilon;
  long double s = 0.0L;
  long double p = x * x * x * x;
  for (long l = 4; l <= lmax; l += 2) {
    s += static_cast<long double>(l) * l * p;
    p *= x * x;
    if (p == 0.0L) break;
  }
  return static_cast<double>(2.0L * s);
}

// int_0^inf e^{-lambda q^2} sinh^p(Jq) sinh(Kq) dq by composite Simpson on a
// finite window, with the integrand rescaled by its largest sampled value.
inline double log_sinh_integral(double J, double K, double lambda, int p) {
  const auto logf = [&](double q) {
    const auto lsinh = [](double x) { return x > 20 ? x - std::log(2.0) : std::log(std::sinh(x)); };
    return -lambda * q * q + p * lsinh(J * q) + (K > 0 ? lsinh(K * q) : std::log(q));
  };
  // the integrand is negligible beyond the point where the Gaussian has
  // overwhelmed every exponential growth rate
  const double qmax = ((p * J + K) / lambda) + 40.0 / std::sqrt(lambda);
  const int n = 400'000;
  const double h = qmax / n;
  std::vector<double> lv(n + 1);
  double top = -INFINITY;
  for (int k = 1; k <= n; ++k) {
    lv[k] = logf(k * h);
    top = std::max(top, lv[k]);
  }
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double w = (k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    s += w * std::exp(lv[k] - top);
  }
  return top + std::log(s * h / 3.0);
}

inline double piy_epsilon(double J, double K, double lambda) {
  return 2.0 * std::exp(log_sinh_integral(J, K, lambda, 4) - log_sinh_integral(J, K, lambda, 3));
}

inline double delta_alpha(double J, double K, double lambda, double alpha, double gamma) {
  const double f = 4 * J + K;
  const double dg = 0.5 * std::exp(-lambda * (gamma - f / (2 * lambda)) * (gamma - f / (2 * lambda)));
  const double e = std::exp(f * gamma + alpha);
  return 5 * dg + e / (1 + e + std::exp(-f * gamma + alpha));
}

// Minimum of delta_alpha over a uniform gamma grid on the admissible range.
inline double min_delta_alpha(double J, double K, double lambda, double alpha, int points = 200'000) {
  const double lo = (4 * J + K) / (2 * lambda), hi = lo + 20.0 / std::sqrt(lambda);
  double best = INFINITY;
  for (int k = 0; k <= points; ++k) best = std::min(best, delta_alpha(J, K, lambda, alpha, lo + (hi - lo) * k / points));
  return best;
}

// Per-site log of the agent-constrained partition function on a chessboard:
// sublattice A carries eta_a, B carries eta_b, every site sees its on-site
// spin and four neighbours of the other sublattice; the g integral is done
// by quadrature.
inline double chessboard_logz_per_site(int eta_a, int eta_b, double J, double K, double alpha, double lambda) {
  const auto site = [&](int own, int other) {
    return alpha * own * own + log_gaussian_weight(K * own + 4 * J * other, lambda);
  };
  return 0.5 * (site(eta_a, eta_b) + site(eta_b, eta_a));
}

}  // namespace oracle
