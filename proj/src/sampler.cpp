#include "gi/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gi/errors.hpp"

namespace gi::mc {

void ChainSpec::validate() const {
  if (burn_in_sweeps < 0) throw DomainError("burn_in_sweeps must be >= 0");
  if (sweeps <= 0) throw DomainError("sweeps must be > 0");
  if (thinning < 1) throw DomainError("thinning must be >= 1");
  if (!(p_occupy >= 0.0 && p_occupy <= 1.0)) throw DomainError("p_occupy must lie in [0,1]");
}

EtaWeights eta_conditional(double graffiti_field, double alpha) {
  const double lm = alpha - graffiti_field;
  const double lp = alpha + graffiti_field;
  const double top = std::max({lm, 0.0, lp});
  const double wm = std::exp(lm - top);
  const double w0 = std::exp(-top);
  const double wp = std::exp(lp - top);
  const double z = wm + w0 + wp;
  return {wm / z, w0 / z, wp / z};
}

void eta_block_update(SpinConfig& config, const Lattice& lattice, const CouplingParams& params, Rng& rng) {
  const std::size_t V = lattice.num_sites();
  const double alpha = params.alpha;
  for (std::size_t i = 0; i < V; ++i) {
    double sum = 0.0;
    for (auto j : lattice.neighbors(i)) sum += config.g[j];
    const double f = params.J * sum + params.K * config.g[i];
    // log weights (alpha - f, 0, alpha + f) with the maximum subtracted
    const double lm = alpha - f;
    const double lp = alpha + f;
    const double top = std::max({lm, 0.0, lp});
    const double wm = std::exp(lm - top);
    const double w0 = std::exp(-top);
    const double wp = std::exp(lp - top);
    const double u = rng.uniform() * (wm + w0 + wp);
    config.eta[i] = u < wm ? std::int8_t{-1} : (u < wm + w0 ? std::int8_t{0} : std::int8_t{1});
  }
}

void g_block_update(SpinConfig& config, const Lattice& lattice, const CouplingParams& params, Rng& rng) {
  const std::size_t V = lattice.num_sites();
  const double inv_two_lambda = 1.0 / (2.0 * params.lambda);
  const double sd = std::sqrt(inv_two_lambda);
  for (std::size_t i = 0; i < V; ++i) {
    double sum = 0.0;
    for (auto j : lattice.neighbors(i)) sum += config.eta[j];
    const double h = params.J * sum + params.K * config.eta[i];
    config.g[i] = rng.normal(h * inv_two_lambda, sd);
  }
}

void sweep(SpinConfig& config, const Lattice& lattice, const CouplingParams& params, Rng& rng) {
  eta_block_update(config, lattice, params, rng);
  g_block_update(config, lattice, params, rng);
}

SpinConfig initial_config(const Lattice& lattice, const CouplingParams& params, const ChainSpec& spec,
                          Rng& rng) {
  const std::size_t V = lattice.num_sites();
  SpinConfig c = SpinConfig::zeros(V);
  switch (spec.init) {
    case InitKind::all_red:
      std::fill(c.eta.begin(), c.eta.end(), std::int8_t{1});
      break;
    case InitKind::all_blue:
      std::fill(c.eta.begin(), c.eta.end(), std::int8_t{-1});
      break;
    case InitKind::empty:
      break;
    case InitKind::random:
      for (std::size_t i = 0; i < V; ++i) {
        if (rng.uniform() < spec.p_occupy) c.eta[i] = rng.uniform() < 0.5 ? std::int8_t{1} : std::int8_t{-1};
      }
      break;
  }
  g_block_update(c, lattice, params, rng);
  return c;
}

ChainStats chain_stats(const std::vector<Sample>& series) {
  if (series.empty()) throw DomainError("chain recorded no samples");
  const std::size_t m = series.size();
  std::vector<double> b(m), n(m), an(m), G(m), e(m);
  for (std::size_t k = 0; k < m; ++k) {
    b[k] = series[k].obs.b;
    n[k] = series[k].obs.n;
    an[k] = std::abs(series[k].obs.n);
    G[k] = series[k].obs.G;
    e[k] = series[k].obs.energy_per_site;
  }
  ChainStats s;
  s.b = summarize(b);
  s.n = summarize(n);
  s.abs_n = summarize(an);
  s.G = summarize(G);
  s.energy_per_site = summarize(e);
  s.binder_cumulant = binder_cumulant(n);
  s.samples = static_cast<std::int64_t>(m);
  return s;
}

ChainResult run_chain(const Lattice& lattice, const CouplingParams& params, const ChainSpec& spec,
                      const SampleObserver& observer) {
  params.validate();
  spec.validate();
  Rng init_rng = Rng(spec.seed).split(0);
  Rng rng = Rng(spec.seed).split(1);

  ChainResult result;
  result.final_config = initial_config(lattice, params, spec, init_rng);
  SpinConfig& config = result.final_config;

  for (std::int64_t s = 0; s < spec.burn_in_sweeps; ++s) sweep(config, lattice, params, rng);

  result.series.reserve(static_cast<std::size_t>(spec.sweeps / spec.thinning));
  for (std::int64_t s = 1; s <= spec.sweeps; ++s) {
    sweep(config, lattice, params, rng);
    if (s % spec.thinning == 0) {
      result.series.push_back({s, measure(config, lattice, params)});
      if (observer) observer(s, config);
    }
  }
  result.stats = chain_stats(result.series);
  return result;
}

EtaDistribution::EtaDistribution(std::size_t num_sites, std::vector<double> probabilities)
    : num_sites_(num_sites), prob_(std::move(probabilities)) {}

std::size_t EtaDistribution::index_of(const std::vector<std::int8_t>& eta) const {
  if (eta.size() != num_sites_) throw ConfigError("agent configuration has the wrong number of sites");
  std::size_t index = 0;
  for (std::size_t i = num_sites_; i-- > 0;) index = 3 * index + static_cast<std::size_t>(eta[i] + 1);
  return index;
}

std::vector<std::int8_t> EtaDistribution::config_of(std::size_t index) const {
  std::vector<std::int8_t> eta(num_sites_);
  for (std::size_t i = 0; i < num_sites_; ++i) {
    eta[i] = static_cast<std::int8_t>(static_cast<int>(index % 3) - 1);
    index /= 3;
  }
  return eta;
}

EtaDistribution exact_eta_marginal(const Lattice& lattice, const CouplingParams& params) {
  params.validate();
  const std::size_t V = lattice.num_sites();
  std::size_t states = 1;
  for (std::size_t i = 0; i < V; ++i) {
    if (states > EtaDistribution::kMaxStates / 3)
      throw CapacityError("3^" + std::to_string(V) + " agent configurations exceed the enumeration limit of " +
                          std::to_string(EtaDistribution::kMaxStates));
    states *= 3;
  }

  std::vector<double> logw(states);
  std::vector<std::int8_t> eta(V, -1);
  const double inv_four_lambda = 1.0 / (4.0 * params.lambda);
  for (std::size_t idx = 0; idx < states; ++idx) {
    double lw = 0.0;
    for (std::size_t i = 0; i < V; ++i) {
      double sum = 0.0;
      for (auto j : lattice.neighbors(i)) sum += eta[j];
      const double h = params.J * sum + params.K * eta[i];
      lw += params.alpha * eta[i] * eta[i] + h * h * inv_four_lambda;
    }
    logw[idx] = lw;
    // advance the base-3 odometer, site 0 fastest
    for (std::size_t i = 0; i < V; ++i) {
      if (eta[i] < 1) {
        ++eta[i];
        break;
      }
      eta[i] = -1;
    }
  }

  const double top = *std::max_element(logw.begin(), logw.end());
  long double z = 0.0L;
  for (double& w : logw) {
    w = std::exp(w - top);
    z += w;
  }
  for (double& w : logw) w = static_cast<double>(w / z);
  return EtaDistribution(V, std::move(logw));
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DomainError("distributions have different supports");
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return static_cast<double>(0.5L * s);
}

OracleComparison compare_to_oracle(const Lattice& lattice, const CouplingParams& params,
                                   const ChainSpec& spec) {
  const EtaDistribution exact = exact_eta_marginal(lattice, params);
  spec.validate();

  std::vector<std::int64_t> counts(exact.num_states(), 0);
  Rng init_rng = Rng(spec.seed).split(0);
  Rng rng = Rng(spec.seed).split(1);
  SpinConfig config = initial_config(lattice, params, spec, init_rng);
  for (std::int64_t s = 0; s < spec.burn_in_sweeps; ++s) sweep(config, lattice, params, rng);
  std::int64_t recorded = 0;
  for (std::int64_t s = 1; s <= spec.sweeps; ++s) {
    sweep(config, lattice, params, rng);
    if (s % spec.thinning == 0) {
      ++counts[exact.index_of(config.eta)];
      ++recorded;
    }
  }

  OracleComparison out;
  out.samples = recorded;
  out.empirical.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    out.empirical[k] = static_cast<double>(counts[k]) / static_cast<double>(recorded);
  out.tv_distance = total_variation(out.empirical, exact.probabilities());
  return out;
}

}  // namespace gi::mc
