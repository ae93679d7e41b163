#pragma once

// Exact two-block Gibbs sampling of the graffiti-interaction measure.
//
// Given the graffiti field, agent spins are independent across sites with
// P(eta_i = s) proportional to exp(f_i s + alpha s^2). Given the agent spins,
// the graffiti values are independent normals with mean h_i / (2 lambda) and
// variance 1 / (2 lambda). One sweep is a full eta pass followed by a full g
// pass, both in site-index order.

#include <cstdint>
#include <functional>
#include <vector>

#include "gi/lattice.hpp"
#include "gi/rng.hpp"
#include "gi/stats.hpp"

namespace gi::mc {

enum class InitKind { all_red, all_blue, empty, random };

struct ChainSpec {
  std::uint64_t seed = 1;
  std::int64_t burn_in_sweeps = 0;
  std::int64_t sweeps = 1;  // measurement-phase sweeps
  std::int64_t thinning = 1;
  InitKind init = InitKind::all_red;
  double p_occupy = 0.5;  // only for InitKind::random

  void validate() const;
};

/// Initial agent spins per `spec`, then g drawn from its exact conditional.
SpinConfig initial_config(const Lattice& lattice, const CouplingParams& params, const ChainSpec& spec,
                          Rng& rng);

void eta_block_update(SpinConfig& config, const Lattice& lattice, const CouplingParams& params, Rng& rng);
void g_block_update(SpinConfig& config, const Lattice& lattice, const CouplingParams& params, Rng& rng);
void sweep(SpinConfig& config, const Lattice& lattice, const CouplingParams& params, Rng& rng);

/// Conditional law of one agent spin: probabilities of (-1, 0, +1) given the
/// graffiti field f and the proclivity alpha, computed in log space.
struct EtaWeights {
  double minus, zero, plus;
};
EtaWeights eta_conditional(double graffiti_field, double alpha);

struct Sample {
  std::int64_t sweep = 0;  // sweeps completed after burn-in
  Observables obs;
};

struct ChainStats {
  SeriesSummary b, n, abs_n, G, energy_per_site;
  double binder_cumulant = 0.0;
  std::int64_t samples = 0;
};

struct ChainResult {
  ChainStats stats;
  std::vector<Sample> series;
  SpinConfig final_config;
};

ChainStats chain_stats(const std::vector<Sample>& series);

/// Called with (sweeps after burn-in, configuration) at every recorded sample.
using SampleObserver = std::function<void(std::int64_t, const SpinConfig&)>;

/// Deterministic given `spec.seed`: initialization uses stream 0 of the seed,
/// the sweeps use stream 1. Observables are recorded after every
/// `spec.thinning`-th sweep of the measurement phase.
ChainResult run_chain(const Lattice& lattice, const CouplingParams& params, const ChainSpec& spec,
                      const SampleObserver& observer = {});

/// Exact marginal law of the agent spins with g integrated out:
///   P(eta) ~ exp(alpha sum_i eta_i^2 + sum_i h_i(eta)^2 / (4 lambda)).
/// Configurations are indexed by sum_i (eta_i + 1) 3^i.
class EtaDistribution {
 public:
  static constexpr std::size_t kMaxStates = 1'000'000;

  EtaDistribution(std::size_t num_sites, std::vector<double> probabilities);

  std::size_t num_sites() const { return num_sites_; }
  std::size_t num_states() const { return prob_.size(); }
  const std::vector<double>& probabilities() const { return prob_; }
  double probability(std::size_t index) const { return prob_[index]; }

  std::size_t index_of(const std::vector<std::int8_t>& eta) const;
  std::vector<std::int8_t> config_of(std::size_t index) const;

 private:
  std::size_t num_sites_;
  std::vector<double> prob_;
};

EtaDistribution exact_eta_marginal(const Lattice& lattice, const CouplingParams& params);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct OracleComparison {
  double tv_distance = 0.0;
  std::int64_t samples = 0;
  std::vector<double> empirical;
};

/// Runs a chain per `spec` and measures the total-variation distance between
/// the empirical agent-configuration frequencies of the recorded samples and
/// the exact marginal.
OracleComparison compare_to_oracle(const Lattice& lattice, const CouplingParams& params,
                                   const ChainSpec& spec);

}  // namespace gi::mc
