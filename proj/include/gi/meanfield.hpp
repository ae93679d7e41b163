#pragma once

// Complete-graph (mean-field) free energy
//
//   Phi(b, n, G) = -J n G - alpha b + lambda G^2
//                  + x log x + y log y + (1 - b) log(1 - b),
//   x = (b + n) / 2,  y = (b - n) / 2,
//
// over occupied fraction b in (0,1) and red excess |n| < b. Minimizing over
// G (G = J n / (2 lambda)) leaves a two-variable problem parameterised by
// mu = J^2 / (2 lambda) and the ambient occupancy b_R = 2e^alpha / (1 + 2e^alpha).
// (b_R, 0) is always stationary; ordered minimizers have n > 0 by convention.

#include <optional>
#include <vector>

namespace gi::mf {

double alpha_of(double b_R);
double ambient_occupancy(double alpha);

struct MFParams {
  double b_R = 0.5;
  double mu = 0.0;
  // Concrete couplings, when known; only used to report G.
  std::optional<double> J;
  std::optional<double> lambda;

  static MFParams from_ambient(double b_R, double mu);
  static MFParams from_couplings(double J, double alpha, double lambda);

  double alpha() const { return alpha_of(b_R); }
  double mu_S() const { return 1.0 / b_R; }

  void validate() const;
};

double phi_full(double b, double n, double G, double J, double alpha, double lambda);

/// Phi with G eliminated: -mu n^2 / 2 - alpha b + entropy terms.
double phi_reduced(double b, double n, const MFParams& params);

/// Phi at the trivial point (b_R, 0) in closed form.
double phi_trivial(const MFParams& params);

/// phi_reduced(b, n) - phi_trivial(), evaluated without cancellation: every
/// term is second order in (b - b_R, n), so the difference keeps full
/// relative precision even when it is far below the magnitude of Phi itself.
double phi_excess(double b, double n, const MFParams& params);

struct Gradient {
  double b, n;
};
struct Hessian {
  double bb, bn, nn;
};
Gradient phi_gradient(double b, double n, const MFParams& params);
Hessian phi_hessian(double b, double n, const MFParams& params);

struct Residuals {
  double r1;  // 4 e^{2 alpha} (1 - b)^2 - (b^2 - n^2)
  double r2;  // mu n - atanh(n / b)
};
Residuals mf_residuals(double b, double n, const MFParams& params);

/// The occupancy that makes Phi stationary in b at fixed n (the unique root
/// in (n, 1) of the first mean-field equation).
double stationary_occupancy(double n, double b_R);

struct SolverOptions {
  int grid = 800;                 // grid points per axis of the (b, n/b) scan
  double trivial_margin = 1e-12;  // a candidate must beat Phi(b_R, 0) by more than this
  int max_newton_iterations = 100;
};

struct MFSolution {
  double b = 0.0;
  double n = 0.0;
  std::optional<double> G;  // J n / (2 lambda), only with concrete couplings
  double theta = 0.0;       // n / b
  double phi_value = 0.0;
  double delta_phi = 0.0;  // phi_value - Phi(b_R, 0)
  bool is_trivial = true;
  Residuals residuals{0.0, 0.0};
  bool newton_converged = true;  // false: reported point is the best grid point
};

/// Global minimizer over {0 < b < 1, 0 <= n < b}: grid scan, then damped
/// Newton from the grid's local minima and from every nontrivial stationary
/// point of the one-dimensional branch n -> (stationary_occupancy(n), n).
MFSolution minimize_phi(const MFParams& params, const SolverOptions& options = {});

enum class TransitionOrder { continuous, first_order };

struct TransitionOptions {
  double tolerance = 1e-6;     // absolute accuracy of mu_T
  double probe_width = 1e-10;  // bracket width at which the jump is read off
  double jump_threshold = 1e-3;
  SolverOptions solver{};
};

struct TransitionReport {
  double b_R = 0.0;
  double mu_T = 0.0;
  double mu_S = 0.0;
  TransitionOrder order = TransitionOrder::continuous;
  double n_jump = 0.0;
};

/// Locates mu_T by bisection on "the global minimizer is nontrivial" over
/// mu in [1, mu_S + 1]. Below mu = 1 no nontrivial stationary point exists,
/// above mu_S the trivial point is a saddle.
TransitionReport transition(double b_R, const TransitionOptions& options = {});

struct TricriticalResult {
  double b_R = 0.0;
  double alpha = 0.0;
  int iterations = 0;
};

/// Bisection in b_R on the transition order; `lo` must be first order and
/// `hi` continuous.
TricriticalResult tricritical_scan(double lo = 0.2, double hi = 0.5, double tolerance = 1e-4,
                                   const TransitionOptions& options = {});

struct PhaseRow {
  double b_R, mu, b, n, G_reduced, phi;
  bool ordered;
  TransitionOrder order;  // of the transition crossed at this b_R
};

struct Range {
  double lo, hi;
  int steps;  // number of points, endpoints included
  double at(int k) const { return steps <= 1 ? lo : lo + (hi - lo) * k / (steps - 1); }
};

std::vector<PhaseRow> phase_diagram(const Range& b_R, const Range& mu, const TransitionOptions& options = {});

const char* to_string(TransitionOrder order);

}  // namespace gi::mf
