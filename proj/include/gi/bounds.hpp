#pragma once

// Closed-form estimates that certify a parameter point as ordered (several
// coexisting phases) or as having a unique, rapidly mixing Gibbs state.

#include <optional>

#include "gi/lattice.hpp"

namespace gi::bounds {

/// Agent patterns frozen on a chessboard: both sublattices vacant, equal
/// colours, opposite colours, or one colour against vacancy.
enum class BondPattern { vacant_vacant, coherent, opposed, mixed_void };

/// Connective constant of the square lattice: the customary 2.638, and a safe
/// upper bound used when a classification has to be sound.
inline constexpr double kConnectiveConstant = 2.638;
inline constexpr double kConnectiveConstantSafe = 2.680;

/// Bond-occupation threshold solving e + e^2/2 = 1/2.
double epsilon0();

/// Lower bound on the diamond-percolation threshold.
inline constexpr double kDiamondThresholdLower = 1.0 / 12.0;

/// Threshold on the Peierls sum for declaring the ordered regime.
inline constexpr double kPeierlsThreshold = 0.5;

/// log of the per-site factor of the agent-constrained partition function.
double constrained_logz_per_site(BondPattern pattern, const CouplingParams& params);

struct IncoherentBounds {
  double bound_00;  // vacant pair
  double bound_pm;  // opposed colours
  double bound_p0;  // colour next to vacancy
  double epsilon;   // union bound with multiplicities (1, 2, 4)
};

IncoherentBounds incoherent_bond_bounds(const CouplingParams& params);

/// 2 sum_{l = 4, 6, ...} l^2 (connective * epsilon)^l, or +inf when the
/// series diverges.
double peierls_bound(double epsilon, double connective = kConnectiveConstant);

/// Edge-occupation bound of the graphical representation,
///   2 int_0^inf e^{-lambda q^2} sinh^4(Jq) sinh(Kq) dq
///     / int_0^inf e^{-lambda q^2} sinh^3(Jq) sinh(Kq) dq.
/// Needs lambda > 0 and J, K >= 0; J = 0 gives the limit 0 and K = 0 the
/// limit sinh(Kq)/K -> q. Throws ConvergenceError if the quadrature does not
/// reach 1e-8 relative accuracy.
double piy_epsilon(double J, double K, double lambda);

struct SparseReport {
  double gamma = 0.0;
  double delta_gamma = 0.0;  // Gaussian tail bound for g above gamma
  double delta_alpha = 0.0;  // bound on the red occupation probability
  double pc_diamond_lower = kDiamondThresholdLower;
  bool satisfied = false;    // delta_alpha < pc_diamond_lower
};

/// delta_gamma and delta_alpha at the given gamma (which must be at least
/// (4J+K)/(2 lambda)), or minimised over gamma when none is given.
SparseReport sparse_report(const CouplingParams& params, std::optional<double> gamma = std::nullopt);

enum class Regime { proven_ordered, proven_unique_hightemp, proven_unique_sparse, unresolved };

const char* to_string(Regime regime);

struct BoundReport {
  double logz_00, logz_pp, logz_pm, logz_p0;
  IncoherentBounds incoherent;
  double lambda2 = kConnectiveConstant;
  double peierls_total;       // with kConnectiveConstant
  double peierls_safe;        // with the safe upper bound; used to classify
  double epsilon0;
  double piy;
  SparseReport sparse;
  Regime classification;
};

BoundReport bound_report(const CouplingParams& params);

Regime classify_regime(const CouplingParams& params);

}  // namespace gi::bounds
