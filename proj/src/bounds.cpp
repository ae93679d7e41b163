#include "gi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "gi/errors.hpp"

namespace gi::bounds {

double epsilon0() { return std::numbers::sqrt2 - 1.0; }

double constrained_logz_per_site(BondPattern pattern, const CouplingParams& params) {
  params.validate();
  const double gauss = 0.5 * std::log(std::numbers::pi / params.lambda);
  const double J = params.J, K = params.K, a = params.alpha, l = params.lambda;
  switch (pattern) {
    case BondPattern::vacant_vacant:
      return gauss;
    case BondPattern::coherent:
      return a + gauss + (4 * J + K) * (4 * J + K) / (4 * l);
    case BondPattern::opposed:
      return a + gauss + (-4 * J + K) * (-4 * J + K) / (4 * l);
    case BondPattern::mixed_void:
      // the 4J field felt by the vacant sublattice is not included
      return 0.5 * a + gauss + K * K / (8 * l);
  }
  throw DomainError("unknown bond pattern");
}

IncoherentBounds incoherent_bond_bounds(const CouplingParams& params) {
  params.validate();
  const double J = params.J, K = params.K, a = params.alpha, l = params.lambda;
  IncoherentBounds r;
  r.bound_00 = std::exp(-0.5 * a - (4 * J + K) * (4 * J + K) / (8 * l));
  r.bound_pm = std::exp(-2 * J * K / l);
  r.bound_p0 = std::exp(-0.25 * a - (2 * J * J + J * K + K * K / 16) / l);
  r.epsilon = 1 * r.bound_00 + 2 * r.bound_pm + 4 * r.bound_p0;
  return r;
}

double peierls_bound(double epsilon, double connective) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be >= 0");
  const double x = connective * epsilon;
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  if (x == 0.0) return 0.0;
  const double x2 = x * x;
  double power = x2 * x2;  // x^l
  double sum = 0.0;
  for (double l = 4.0;; l += 2.0) {
    const double term = l * l * power;
    sum += term;
    const double ratio = ((l + 2) / l) * ((l + 2) / l) * x2;
    if (ratio < 1.0) {
      // later ratios are smaller, so the tail is dominated by a geometric series
      const double tail = term * ratio / (1.0 - ratio);
      if (2.0 * tail <= 1e-15) break;
    }
    power *= x2;
  }
  return 2.0 * sum;
}

namespace {

double log_sinh(double x) {
  if (x > 20.0) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

// Log of e^{-lambda q^2} sinh^p(Jq) sinh(Kq) (sinh(Kq) -> q when K = 0).
struct LogIntegrand {
  double J, K, lambda;
  int power;

  double operator()(double q) const {
    const double onsite = K > 0.0 ? log_sinh(K * q) : std::log(q);
    return -lambda * q * q + power * log_sinh(J * q) + onsite;
  }
  double slope(double q) const {
    const double onsite = K > 0.0 ? K / std::tanh(K * q) : 1.0 / q;
    return -2.0 * lambda * q + power * J / std::tanh(J * q) + onsite;
  }
};

// Returns log of the integral over (0, inf).
double log_integral(const LogIntegrand& f) {
  // The log-integrand is strictly concave; its slope falls from +inf to -inf.
  double hi = 1.0 / std::sqrt(f.lambda);
  while (f.slope(hi) > 0.0) hi *= 2.0;
  double lo = hi;
  while (f.slope(lo) < 0.0) lo *= 0.5;
  boost::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve([&](double q) { return f.slope(q); }, lo, hi,
                                                        boost::math::tools::eps_tolerance<double>(50), iters);
  const double peak = 0.5 * (a + b);
  const double top = f(peak);

  double width = 1.0 / std::sqrt(f.lambda);
  while (f(peak + width) - top > -80.0) width *= 1.5;
  const double upper = peak + width;

  const auto integrand = [&](double q) { return q <= 0.0 ? 0.0 : std::exp(f(q) - top); };
  double err_left = 0.0, err_right = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double left = GK::integrate(integrand, 0.0, peak, 20, 1e-13, &err_left);
  const double right = GK::integrate(integrand, peak, upper, 20, 1e-13, &err_right);
  const double total = left + right;
  // Boost reports errors on the rescaled [-1,1] interval; multiplying by the
  // top-level half width over-estimates the absolute error.
  const double abs_err = err_left * 0.5 * peak + err_right * 0.5 * width;
  if (!(total > 0.0) || !(abs_err <= 1e-8 * total))
    throw ConvergenceError("edge-probability quadrature did not converge (J=" + std::to_string(f.J) +
                           ", K=" + std::to_string(f.K) + ", lambda=" + std::to_string(f.lambda) +
                           ", power=" + std::to_string(f.power) + ", integral=" + std::to_string(total) +
                           ", error estimate=" + std::to_string(abs_err) + ")");
  return top + std::log(total);
}

}  // namespace

double piy_epsilon(double J, double K, double lambda) {
  if (!std::isfinite(J) || !std::isfinite(K) || !std::isfinite(lambda))
    throw DomainError("couplings must be finite");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  if (J < 0.0 || K < 0.0) throw DomainError("J and K must be >= 0");
  if (J == 0.0) return 0.0;
  const double num = log_integral({J, K, lambda, 4});
  const double den = log_integral({J, K, lambda, 3});
  return 2.0 * std::exp(num - den);
}

namespace {

struct SparseTerms {
  double delta_gamma, delta_alpha;
};

SparseTerms sparse_terms(const CouplingParams& p, double gamma) {
  const double field = 4 * p.J + p.K;
  const double vertex = field / (2 * p.lambda);
  const double delta_gamma = 0.5 * std::exp(-p.lambda * (gamma - vertex) * (gamma - vertex));
  const double s = field * gamma;
  // e^{s+a} / (1 + e^{s+a} + e^{-s+a}), divided through by e^{s+a}
  const double occupation = 1.0 / (std::exp(-s - p.alpha) + 1.0 + std::exp(-2.0 * s));
  return {delta_gamma, 5.0 * delta_gamma + occupation};
}

}  // namespace

SparseReport sparse_report(const CouplingParams& params, std::optional<double> gamma) {
  params.validate();
  const double vertex = (4 * params.J + params.K) / (2 * params.lambda);
  double best = 0.0;
  if (gamma) {
    if (!(*gamma >= vertex))
      throw DomainError("gamma must be >= (4J+K)/(2 lambda) = " + std::to_string(vertex));
    best = *gamma;
  } else {
    const double lo = vertex, hi = vertex + 20.0 / std::sqrt(params.lambda);
    const auto f = [&](double g) { return sparse_terms(params, g).delta_alpha; };
    // coarse scan, then golden-section search around the best scan point
    constexpr int kScan = 400;
    const double step = (hi - lo) / kScan;
    int arg = 0;
    double fmin = f(lo);
    for (int k = 1; k <= kScan; ++k) {
      const double v = f(lo + k * step);
      if (v < fmin) {
        fmin = v;
        arg = k;
      }
    }
    double a = lo + std::max(arg - 1, 0) * step;
    double b = lo + std::min(arg + 1, kScan) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12 * std::max(1.0, std::abs(b))) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    best = 0.5 * (a + b);
    if (fmin < f(best)) best = lo + arg * step;
  }
  const SparseTerms t = sparse_terms(params, best);
  SparseReport r;
  r.gamma = best;
  r.delta_gamma = t.delta_gamma;
  r.delta_alpha = t.delta_alpha;
  r.satisfied = t.delta_alpha < kDiamondThresholdLower;
  return r;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::proven_ordered:
      return "proven_ordered";
    case Regime::proven_unique_hightemp:
      return "proven_unique_hightemp";
    case Regime::proven_unique_sparse:
      return "proven_unique_sparse";
    case Regime::unresolved:
      return "unresolved";
  }
  return "unresolved";
}

BoundReport bound_report(const CouplingParams& params) {
  params.validate();
  BoundReport r;
  r.logz_00 = constrained_logz_per_site(BondPattern::vacant_vacant, params);
  r.logz_pp = constrained_logz_per_site(BondPattern::coherent, params);
  r.logz_pm = constrained_logz_per_site(BondPattern::opposed, params);
  r.logz_p0 = constrained_logz_per_site(BondPattern::mixed_void, params);
  r.incoherent = incoherent_bond_bounds(params);
  r.peierls_total = peierls_bound(r.incoherent.epsilon, kConnectiveConstant);
  r.peierls_safe = peierls_bound(r.incoherent.epsilon, kConnectiveConstantSafe);
  r.epsilon0 = epsilon0();
  r.piy = piy_epsilon(params.J, params.K, params.lambda);
  r.sparse = sparse_report(params);
  // ordered wins ties; the inequalities are mutually exclusive in exact arithmetic
  if (r.peierls_safe < kPeierlsThreshold)
    r.classification = Regime::proven_ordered;
  else if (r.piy < r.epsilon0)
    r.classification = Regime::proven_unique_hightemp;
  else if (r.sparse.satisfied)
    r.classification = Regime::proven_unique_sparse;
  else
    r.classification = Regime::unresolved;
  return r;
}

Regime classify_regime(const CouplingParams& params) { return bound_report(params).classification; }

}  // namespace gi::bounds
