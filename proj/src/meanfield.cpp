#include "gi/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "gi/errors.hpp"

namespace gi::mf {

namespace {

constexpr double kEdge = 1e-12;
// Smallest order parameter reported as ordered. Near a continuous transition
// n ~ sqrt(mu - mu_S), so anything smaller belongs to mu - mu_S below double
// resolution; Newton iterates creeping towards n = 0 land here.
constexpr double kMinOrder = 1e-12;

bool in_domain(double b, double n) { return b > 0.0 && b < 1.0 && std::abs(n) < b; }

void require_domain(double b, double n) {
  if (!in_domain(b, n))
    throw DomainError("free energy needs 0 < b < 1 and |n| < b (b=" + std::to_string(b) +
                      ", n=" + std::to_string(n) + ")");
}

double xlogx(double x) { return x * std::log(x); }

// log1p(u) - u, accurate for small |u|.
double log1p_minus(double u) {
  if (std::abs(u) < 1e-2) {
    double term = u * u;
    double sum = 0.0;
    for (int k = 2; k <= 12; ++k) {
      sum += (k % 2 == 0 ? -term : term) / k;
      term *= u;
    }
    return sum;
  }
  return std::log1p(u) - u;
}

// x log x - x0 log x0 - (x - x0)(log x0 + 1), for x = x0 + d.
double entropy_excess(double x0, double d) {
  const double u = d / x0;
  return (x0 + d) * log1p_minus(u) + d * u;
}

}  // namespace

double alpha_of(double b_R) {
  if (!(b_R > 0.0 && b_R < 1.0)) throw DomainError("b_R must lie in the open interval (0,1)");
  return std::log(b_R / (2.0 * (1.0 - b_R)));
}

double ambient_occupancy(double alpha) {
  // 2e^a / (1 + 2e^a) written to stay finite for large |alpha|
  return 1.0 / (1.0 + 0.5 * std::exp(-alpha));
}

MFParams MFParams::from_ambient(double b_R, double mu) {
  MFParams p;
  p.b_R = b_R;
  p.mu = mu;
  p.validate();
  return p;
}

MFParams MFParams::from_couplings(double J, double alpha, double lambda) {
  if (!std::isfinite(J) || !std::isfinite(alpha) || !std::isfinite(lambda))
    throw DomainError("couplings must be finite");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  MFParams p;
  p.b_R = ambient_occupancy(alpha);
  p.mu = J * J / (2.0 * lambda);
  p.J = J;
  p.lambda = lambda;
  p.validate();
  return p;
}

void MFParams::validate() const {
  if (!(b_R > 0.0 && b_R < 1.0)) throw DomainError("b_R must lie in the open interval (0,1)");
  if (!std::isfinite(mu) || mu < 0.0) throw DomainError("mu must be finite and >= 0");
  if (J.has_value() != lambda.has_value()) throw DomainError("J and lambda must be given together");
}

double phi_full(double b, double n, double G, double J, double alpha, double lambda) {
  require_domain(b, n);
  return -J * n * G - alpha * b + lambda * G * G + xlogx((b + n) / 2) + xlogx((b - n) / 2) +
         xlogx(1.0 - b);
}

double phi_reduced(double b, double n, const MFParams& params) {
  require_domain(b, n);
  return -0.5 * params.mu * n * n - params.alpha() * b + xlogx((b + n) / 2) + xlogx((b - n) / 2) +
         xlogx(1.0 - b);
}

double phi_trivial(const MFParams& params) {
  const double bR = params.b_R;
  return -params.alpha() * bR + bR * std::log(bR / 2) + (1.0 - bR) * std::log(1.0 - bR);
}

double phi_excess(double b, double n, const MFParams& params) {
  require_domain(b, n);
  const double bR = params.b_R;
  const double db = b - bR;
  // First-order part: vanishes identically because alpha = log(b_R / (2(1-b_R))).
  const double linear = db * (std::log(bR / 2) - std::log1p(-bR) - params.alpha());
  const double half = bR / 2;
  return -0.5 * params.mu * n * n + linear + entropy_excess(half, (db + n) / 2) +
         entropy_excess(half, (db - n) / 2) + entropy_excess(1.0 - bR, -db);
}

Gradient phi_gradient(double b, double n, const MFParams& params) {
  require_domain(b, n);
  return {-params.alpha() + 0.5 * std::log((b * b - n * n) / 4) - std::log1p(-b),
          -params.mu * n + std::atanh(n / b)};
}

Hessian phi_hessian(double b, double n, const MFParams& params) {
  require_domain(b, n);
  const double d = b * b - n * n;
  return {b / d + 1.0 / (1.0 - b), -n / d, -params.mu + b / d};
}

Residuals mf_residuals(double b, double n, const MFParams& params) {
  require_domain(b, n);
  const double a = std::exp(params.alpha());
  return {4.0 * a * a * (1.0 - b) * (1.0 - b) - (b * b - n * n),
          params.mu * n - 0.5 * std::log((b + n) / (b - n))};
}

double stationary_occupancy(double n, double b_R) {
  if (!(b_R > 0.0 && b_R < 1.0)) throw DomainError("b_R must lie in the open interval (0,1)");
  if (!(n >= 0.0 && n < 1.0)) throw DomainError("n must lie in [0,1)");
  // (1 - a^2) b^2 + 2 a^2 b - (a^2 + n^2) = 0 with a = 2e^alpha = b_R / (1 - b_R),
  // positive root rationalised so that a = 1 needs no special case.
  const double a = b_R / (1.0 - b_R);
  const double a2 = a * a;
  return (a2 + n * n) / (a2 + std::sqrt(a2 + n * n * (1.0 - a2)));
}

namespace {

struct Candidate {
  double b, n;
  double excess;
  bool converged;
};

// Sign of d/dn Phi along the stationary-occupancy branch, divided by n:
// atanh(n/b(n)) / n - mu.
double branch_slope(double n, const MFParams& p) {
  const double b = stationary_occupancy(n, p.b_R);
  const double x = n / b;
  const double ratio = x < 1e-8 ? 1.0 + x * x / 3.0 : std::atanh(x) / x;
  return ratio / b - p.mu;
}

// Nontrivial local minima of Phi along the branch: n where branch_slope
// crosses zero from below.
std::vector<double> branch_minima(const MFParams& p) {
  std::vector<double> ns;
  for (int k = 0; k <= 200; ++k) ns.push_back(std::pow(10.0, -9.0 + 7.0 * k / 200.0));
  for (int k = 1; k < 2000; ++k) ns.push_back(0.01 + 0.99 * k / 2000.0);
  for (int k = 0; k <= 120; ++k) ns.push_back(1.0 - std::pow(10.0, -3.0 - 12.0 * k / 120.0));
  std::sort(ns.begin(), ns.end());

  std::vector<double> roots;
  double prev_n = ns.front();
  double prev_s = branch_slope(prev_n, p);
  for (std::size_t k = 1; k < ns.size(); ++k) {
    const double s = branch_slope(ns[k], p);
    if (prev_s < 0.0 && s >= 0.0) {
      boost::uintmax_t iters = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          [&](double n) { return branch_slope(n, p); }, prev_n, ns[k], prev_s, s,
          boost::math::tools::eps_tolerance<double>(52), iters);
      roots.push_back(0.5 * (lo + hi));
    }
    prev_n = ns[k];
    prev_s = s;
  }
  return roots;
}

Candidate newton_polish(double b, double n, const MFParams& p, int max_iter) {
  double f = phi_excess(b, n, p);
  for (int it = 0; it < max_iter; ++it) {
    const Gradient g = phi_gradient(b, n, p);
    Hessian h = phi_hessian(b, n, p);

    // Shift the Hessian until it is positive definite (saddle regions).
    const double tr = h.bb + h.nn;
    const double det = h.bb * h.nn - h.bn * h.bn;
    const double min_eig = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
    if (min_eig <= 0.0) {
      const double shift = -min_eig + 1e-6 * std::max(1.0, std::abs(tr));
      h.bb += shift;
      h.nn += shift;
    }
    const double dd = h.bb * h.nn - h.bn * h.bn;
    const double step_b = -(h.nn * g.b - h.bn * g.n) / dd;
    const double step_n = -(h.bb * g.n - h.bn * g.b) / dd;
    const double slope = g.b * step_b + g.n * step_n;

    double t = 1.0;
    double nb = b, nn = n, nf = f;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls, t *= 0.5) {
      nb = b + t * step_b;
      nn = n + t * step_n;
      if (!(nn > 0.0 && nb - nn >= kEdge && nb <= 1.0 - kEdge)) continue;
      nf = phi_excess(nb, nn, p);
      if (nf <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No descent left at double precision: stationary if the step was
      // already negligible.
      const bool tiny = std::abs(step_b) < 1e-12 && std::abs(step_n) < 1e-10 * n + 1e-300;
      return {b, n, f, tiny};
    }
    const double moved_b = std::abs(nb - b);
    const double moved_n = std::abs(nn - n);
    b = nb;
    n = nn;
    f = nf;
    if (moved_b < 1e-15 && moved_n < 1e-13 * n + 1e-300) return {b, n, f, true};
  }
  return {b, n, f, false};
}

}  // namespace

MFSolution minimize_phi(const MFParams& params, const SolverOptions& options) {
  params.validate();
  if (options.grid < 4) throw DomainError("grid resolution must be >= 4");
  const double trivial = phi_trivial(params);

  // Grid over (b, t = n/b) in the open unit square.
  const int N = options.grid;
  const double alpha = params.alpha();
  std::vector<double> values(static_cast<std::size_t>(N) * N);
  const auto b_at = [N](int k) { return std::clamp((k + 0.5) / N, kEdge, 1.0 - kEdge); };
  const auto t_at = [N](int m) { return (m + 0.5) / N; };
  for (int k = 0; k < N; ++k) {
    const double b = b_at(k);
    for (int m = 0; m < N; ++m) {
      const double n = std::min(t_at(m) * b, b - kEdge);
      values[static_cast<std::size_t>(k) * N + m] = -0.5 * params.mu * n * n - alpha * b +
                                                    xlogx((b + n) / 2) + xlogx((b - n) / 2) +
                                                    xlogx(1.0 - b) - trivial;
    }
  }
  std::vector<std::pair<double, std::pair<int, int>>> local;
  for (int k = 0; k < N; ++k) {
    for (int m = 0; m < N; ++m) {
      const double v = values[static_cast<std::size_t>(k) * N + m];
      bool is_min = true;
      for (int dk = -1; dk <= 1 && is_min; ++dk)
        for (int dm = -1; dm <= 1; ++dm) {
          const int kk = k + dk, mm = m + dm;
          if ((dk || dm) && kk >= 0 && kk < N && mm >= 0 && mm < N &&
              values[static_cast<std::size_t>(kk) * N + mm] < v) {
            is_min = false;
            break;
          }
        }
      if (is_min) local.push_back({v, {k, m}});
    }
  }
  std::sort(local.begin(), local.end());
  if (local.size() > 8) local.resize(8);

  std::vector<std::pair<double, double>> seeds;
  for (const auto& [v, km] : local) {
    const double b = b_at(km.first);
    seeds.emplace_back(b, std::min(t_at(km.second) * b, b - kEdge));
  }

  std::optional<Candidate> best;
  const auto consider = [&](const Candidate& c, double required_gain) {
    if (c.converged && c.n > kMinOrder && (!best || c.excess < best->excess - required_gain)) best = c;
  };
  // Branch roots are exact stationary points already; polishing them in the
  // ill-conditioned corner n -> b -> 1 would only lose accuracy. A Newton
  // result replaces them only if it is better by more than rounding.
  for (double n : branch_minima(params)) {
    const double b = stationary_occupancy(n, params.b_R);
    if (b - n > 0.0 && b < 1.0) consider({b, n, phi_excess(b, n, params), true}, 0.0);
  }
  for (const auto& [b0, n0] : seeds)
    consider(newton_polish(b0, n0, params, options.max_newton_iterations), 1e-13);
  bool converged = true;
  if (!best && !local.empty() && local.front().first < -options.trivial_margin) {
    // Newton failed although the grid beats the trivial point: fall back to
    // the best grid point, flagged.
    const auto [v, km] = local.front();
    const double b = b_at(km.first);
    const double n = std::min(t_at(km.second) * b, b - kEdge);
    best = Candidate{b, n, phi_excess(b, n, params), false};
    converged = false;
  }

  MFSolution sol;
  sol.newton_converged = converged;
  if (best && best->excess < -options.trivial_margin) {
    sol.b = best->b;
    sol.n = best->n;
    sol.delta_phi = best->excess;
    sol.is_trivial = false;
  } else {
    sol.b = params.b_R;
    sol.n = 0.0;
    sol.delta_phi = 0.0;
    sol.is_trivial = true;
  }
  sol.theta = sol.n / sol.b;
  sol.phi_value = trivial + sol.delta_phi;
  sol.residuals = mf_residuals(sol.b, sol.n, params);
  if (params.J && params.lambda) sol.G = *params.J * sol.n / (2.0 * *params.lambda);
  return sol;
}

const char* to_string(TransitionOrder order) {
  return order == TransitionOrder::first_order ? "first_order" : "continuous";
}

TransitionReport transition(double b_R, const TransitionOptions& options) {
  if (!(b_R > 0.0 && b_R < 1.0)) throw DomainError("b_R must lie in the open interval (0,1)");
  if (!(options.tolerance > 0.0) || !(options.probe_width > 0.0))
    throw DomainError("transition tolerances must be > 0");

  SolverOptions exact = options.solver;
  exact.trivial_margin = 0.0;
  const auto solve = [&](double mu) { return minimize_phi(MFParams::from_ambient(b_R, mu), exact); };
  const auto ordered = [&](double mu) { return !solve(mu).is_trivial; };

  const double mu_S = 1.0 / b_R;
  double lo = 1.0, hi = mu_S + 1.0;
  if (ordered(lo) || !ordered(hi))
    throw ConvergenceError("transition bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] does not straddle the ordering transition for b_R=" + std::to_string(b_R));

  const double width = std::min(options.tolerance, options.probe_width);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (ordered(mid) ? hi : lo) = mid;
  }

  TransitionReport r;
  r.b_R = b_R;
  r.mu_S = mu_S;
  r.mu_T = std::min(0.5 * (lo + hi), mu_S);
  r.n_jump = solve(hi).n;
  r.order = r.n_jump > options.jump_threshold ? TransitionOrder::first_order : TransitionOrder::continuous;
  return r;
}

TricriticalResult tricritical_scan(double lo, double hi, double tolerance, const TransitionOptions& options) {
  if (!(0.0 < lo && lo < hi && hi < 1.0)) throw DomainError("tricritical scan needs 0 < lo < hi < 1");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  const auto first_order = [&](double b_R) {
    return transition(b_R, options).order == TransitionOrder::first_order;
  };
  if (!first_order(lo) || first_order(hi))
    throw ConvergenceError("tricritical bracket must be first order at lo and continuous at hi");
  TricriticalResult r;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (first_order(mid) ? lo : hi) = mid;
    ++r.iterations;
  }
  r.b_R = 0.5 * (lo + hi);
  r.alpha = alpha_of(r.b_R);
  return r;
}

std::vector<PhaseRow> phase_diagram(const Range& b_R, const Range& mu, const TransitionOptions& options) {
  if (b_R.steps < 1 || mu.steps < 1) throw DomainError("phase diagram needs at least one point per axis");
  std::vector<PhaseRow> rows;
  rows.reserve(static_cast<std::size_t>(b_R.steps) * mu.steps);
  for (int i = 0; i < b_R.steps; ++i) {
    const double bR = b_R.at(i);
    const TransitionOrder order = transition(bR, options).order;
    for (int j = 0; j < mu.steps; ++j) {
      const double m = mu.at(j);
      const MFSolution s = minimize_phi(MFParams::from_ambient(bR, m), options.solver);
      rows.push_back({bR, m, s.b, s.n, m * s.n, s.phi_value, !s.is_trivial, order});
    }
  }
  return rows;
}

}  // namespace gi::mf
