#pragma once

// Agent-based territorial model on an L x L torus. Any number of red and
// blue agents may share a site; each site holds integer red and blue
// graffiti counts. One step processes the agents in index order: tag the
// current site, then move to one of the four neighbours with probability
// proportional to exp(-opposite graffiti there). Graffiti decays once at the
// end of the step.

#include <cstdint>
#include <vector>

#include "gi/rng.hpp"

namespace gi::abm {

enum class DecayMode {
  binomial,       // each unit removed independently with probability p_g
  multiplicative  // g <- floor((1 - p_g) g)
};

struct AbmConfig {
  int L = 100;
  std::int64_t n_red = 100'000;
  std::int64_t n_blue = 100'000;
  double p_m_unmarked = 0.1;  // tag probability on a site free of opposite graffiti
  double p_m_marked = 1.0;    // tag probability otherwise
  double p_g = 0.25;
  std::int64_t steps = 1000;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> snapshot_times;
  DecayMode decay = DecayMode::binomial;

  void validate() const;
};

struct Agent {
  std::int8_t color;  // +1 red, -1 blue
  std::int32_t site;
};

struct AbmState {
  int L = 0;
  std::vector<Agent> agents;
  std::vector<std::int32_t> red_graffiti;
  std::vector<std::int32_t> blue_graffiti;
  std::int64_t time = 0;

  std::size_t num_sites() const { return red_graffiti.size(); }
};

/// Red agents first, then blue, each on a uniformly random site; no graffiti.
AbmState abm_init(const AbmConfig& config, Rng& rng);

void abm_step(AbmState& state, const AbmConfig& config, Rng& rng);

/// Mean of c_i c_j over torus-adjacent pairs of occupied sites, where
/// c_i = (red_i - blue_i) / (red_i + blue_i). 0 when no such pair exists.
double segregation_index(const AbmState& state);

struct AbmSnapshot {
  std::int64_t time;
  std::vector<std::int32_t> net_agents;    // red - blue agents per site
  std::vector<std::int32_t> net_graffiti;  // red - blue graffiti per site
};

AbmSnapshot take_snapshot(const AbmState& state);

struct AbmRunResult {
  std::vector<double> index;  // entry t is the index after t steps
  std::vector<AbmSnapshot> snapshots;
  AbmState final_state;
};

/// Deterministic given config.seed: stream 0 places the agents, stream 1
/// drives the dynamics.
AbmRunResult abm_run(const AbmConfig& config);

}  // namespace gi::abm
