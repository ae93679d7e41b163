#include "gi/abm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "gi/errors.hpp"

namespace gi::abm {

void AbmConfig::validate() const {
  if (L < 3) throw DomainError("ABM grid side L must be >= 3");
  if (n_red < 0 || n_blue < 0) throw DomainError("agent counts must be >= 0");
  if (n_red + n_blue > static_cast<std::int64_t>(INT32_MAX)) throw DomainError("too many agents");
  const auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p_m_unmarked) || !prob(p_m_marked) || !prob(p_g))
    throw DomainError("ABM probabilities must lie in [0,1]");
  if (steps < 0) throw DomainError("steps must be >= 0");
  for (auto t : snapshot_times)
    if (t < 0 || t > steps) throw DomainError("snapshot time " + std::to_string(t) + " outside [0, steps]");
}

AbmState abm_init(const AbmConfig& config, Rng& rng) {
  config.validate();
  AbmState s;
  s.L = config.L;
  const auto V = static_cast<std::int32_t>(config.L * config.L);
  s.red_graffiti.assign(static_cast<std::size_t>(V), 0);
  s.blue_graffiti.assign(static_cast<std::size_t>(V), 0);
  s.agents.reserve(static_cast<std::size_t>(config.n_red + config.n_blue));
  std::uniform_int_distribution<std::int32_t> site(0, V - 1);
  for (std::int64_t k = 0; k < config.n_red; ++k) s.agents.push_back({1, site(rng)});
  for (std::int64_t k = 0; k < config.n_blue; ++k) s.agents.push_back({-1, site(rng)});
  return s;
}

namespace {

// exp(-k) for integer k; beyond the table the weight underflows to zero.
const std::array<double, 800>& neg_exp_table() {
  static const auto table = [] {
    std::array<double, 800> t{};
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::exp(-static_cast<double>(k));
    return t;
  }();
  return table;
}

std::int32_t thin(std::int32_t units, double keep, Rng& rng) {
  if (units <= 0) return 0;
  if (units <= 64) {
    std::int32_t kept = 0;
    for (std::int32_t u = 0; u < units; ++u) kept += rng.uniform() < keep;
    return kept;
  }
  std::binomial_distribution<std::int32_t> d(units, keep);
  return d(rng);
}

std::vector<std::array<std::int32_t, 4>> torus_neighbors(int L) {
  std::vector<std::array<std::int32_t, 4>> nbr(static_cast<std::size_t>(L * L));
  for (int r = 0; r < L; ++r)
    for (int c = 0; c < L; ++c)
      nbr[static_cast<std::size_t>(r * L + c)] = {((r + L - 1) % L) * L + c, ((r + 1) % L) * L + c,
                                                  r * L + (c + L - 1) % L, r * L + (c + 1) % L};
  return nbr;
}

}  // namespace

void abm_step(AbmState& state, const AbmConfig& config, Rng& rng) {
  thread_local int cached_L = 0;
  thread_local std::vector<std::array<std::int32_t, 4>> neighbors;
  if (cached_L != state.L) {
    neighbors = torus_neighbors(state.L);
    cached_L = state.L;
  }
  const auto& table = neg_exp_table();
  for (Agent& a : state.agents) {
    auto& own = a.color > 0 ? state.red_graffiti : state.blue_graffiti;
    const auto& other = a.color > 0 ? state.blue_graffiti : state.red_graffiti;

    const double p_m = other[static_cast<std::size_t>(a.site)] > 0 ? config.p_m_marked : config.p_m_unmarked;
    if (rng.uniform() < p_m) ++own[static_cast<std::size_t>(a.site)];

    const auto& nbr = neighbors[static_cast<std::size_t>(a.site)];
    std::int32_t lowest = other[static_cast<std::size_t>(nbr[0])];
    for (auto j : nbr) lowest = std::min(lowest, other[static_cast<std::size_t>(j)]);
    std::array<double, 4> w{};
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto excess = static_cast<std::size_t>(other[static_cast<std::size_t>(nbr[k])] - lowest);
      w[k] = excess < table.size() ? table[excess] : 0.0;
      total += w[k];
    }
    double u = rng.uniform() * total;
    std::size_t pick = 0;
    while (pick < 3 && u >= w[pick]) u -= w[pick++];
    a.site = nbr[pick];
  }

  if (config.decay == DecayMode::binomial) {
    const double keep = 1.0 - config.p_g;
    for (std::size_t i = 0; i < state.num_sites(); ++i) {
      state.red_graffiti[i] = thin(state.red_graffiti[i], keep, rng);
      state.blue_graffiti[i] = thin(state.blue_graffiti[i], keep, rng);
    }
  } else {
    const double keep = 1.0 - config.p_g;
    for (std::size_t i = 0; i < state.num_sites(); ++i) {
      state.red_graffiti[i] = static_cast<std::int32_t>(std::floor(keep * state.red_graffiti[i]));
      state.blue_graffiti[i] = static_cast<std::int32_t>(std::floor(keep * state.blue_graffiti[i]));
    }
  }
  ++state.time;
}

double segregation_index(const AbmState& state) {
  const int L = state.L;
  const std::size_t V = state.num_sites();
  std::vector<std::int32_t> red(V, 0), blue(V, 0);
  for (const Agent& a : state.agents) ++(a.color > 0 ? red : blue)[static_cast<std::size_t>(a.site)];
  std::vector<double> score(V, 0.0);
  std::vector<char> occupied(V, 0);
  for (std::size_t i = 0; i < V; ++i) {
    const std::int32_t total = red[i] + blue[i];
    if (total > 0) {
      occupied[i] = 1;
      score[i] = static_cast<double>(red[i] - blue[i]) / total;
    }
  }
  double sum = 0.0;
  std::int64_t pairs = 0;
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const auto i = static_cast<std::size_t>(r * L + c);
      if (!occupied[i]) continue;
      // each undirected bond once: right and down neighbours
      for (const auto j : {static_cast<std::size_t>(r * L + (c + 1) % L),
                           static_cast<std::size_t>(((r + 1) % L) * L + c)}) {
        if (!occupied[j]) continue;
        sum += score[i] * score[j];
        ++pairs;
      }
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

AbmSnapshot take_snapshot(const AbmState& state) {
  AbmSnapshot snap;
  snap.time = state.time;
  snap.net_agents.assign(state.num_sites(), 0);
  for (const Agent& a : state.agents) snap.net_agents[static_cast<std::size_t>(a.site)] += a.color;
  snap.net_graffiti.resize(state.num_sites());
  for (std::size_t i = 0; i < state.num_sites(); ++i)
    snap.net_graffiti[i] = state.red_graffiti[i] - state.blue_graffiti[i];
  return snap;
}

AbmRunResult abm_run(const AbmConfig& config) {
  config.validate();
  Rng init_rng = Rng(config.seed).split(0);
  Rng rng = Rng(config.seed).split(1);
  AbmRunResult out;
  out.final_state = abm_init(config, init_rng);
  AbmState& state = out.final_state;

  std::vector<std::int64_t> snaps = config.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  auto next_snap = snaps.begin();
  const auto maybe_snapshot = [&] {
    while (next_snap != snaps.end() && *next_snap == state.time) {
      out.snapshots.push_back(take_snapshot(state));
      ++next_snap;
    }
  };

  out.index.reserve(static_cast<std::size_t>(config.steps + 1));
  out.index.push_back(segregation_index(state));
  maybe_snapshot();
  for (std::int64_t t = 0; t < config.steps; ++t) {
    abm_step(state, config, rng);
    out.index.push_back(segregation_index(state));
    maybe_snapshot();
  }
  return out;
}

}  // namespace gi::abm
