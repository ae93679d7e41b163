#include "gi/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gi/errors.hpp"

namespace gi {

void CouplingParams::validate() const {
  if (!std::isfinite(J) || !std::isfinite(K) || !std::isfinite(alpha) || !std::isfinite(lambda))
    throw DomainError("couplings must be finite (J, K, alpha, lambda)");
  if (J < 0.0) throw DomainError("J must be >= 0");
  if (K < 0.0) throw DomainError("K must be >= 0");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0 for stability");
}

Lattice Lattice::torus(int L) {
  if (L < 3) throw DomainError("torus side L must be >= 3, got " + std::to_string(L));
  Lattice lat;
  lat.kind_ = Kind::torus2d;
  lat.side_ = L;
  lat.num_sites_ = static_cast<std::size_t>(L) * static_cast<std::size_t>(L);
  lat.edges_.reserve(4 * lat.num_sites_);
  const auto site = [L](int r, int c) {
    return static_cast<std::size_t>(((r + L) % L) * L + (c + L) % L);
  };
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const std::size_t i = site(r, c);
      lat.edges_.emplace_back(i, site(r - 1, c));
      lat.edges_.emplace_back(i, site(r + 1, c));
      lat.edges_.emplace_back(i, site(r, c - 1));
      lat.edges_.emplace_back(i, site(r, c + 1));
    }
  }
  lat.build_adjacency();
  return lat;
}

Lattice Lattice::from_edges(std::size_t num_sites, std::vector<Edge> directed_edges) {
  if (num_sites == 0) throw DomainError("lattice must have at least one site");
  for (const auto& [i, j] : directed_edges) {
    if (i >= num_sites || j >= num_sites) throw DomainError("edge endpoint out of range");
    if (i == j) throw DomainError("self edges are not allowed (on-site coupling is K)");
  }
  std::vector<Edge> sorted = directed_edges;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [i, j] : sorted) {
    if (!std::binary_search(sorted.begin(), sorted.end(), Edge{j, i}))
      throw DomainError("edge list is not orientation-complete: (" + std::to_string(i) + "," +
                        std::to_string(j) + ") has no reverse");
  }
  Lattice lat;
  lat.kind_ = Kind::explicit_graph;
  lat.num_sites_ = num_sites;
  lat.edges_ = std::move(directed_edges);
  lat.build_adjacency();
  return lat;
}

void Lattice::build_adjacency() {
  offsets_.assign(num_sites_ + 1, 0);
  for (const auto& e : edges_) ++offsets_[e.first + 1];
  for (std::size_t i = 0; i < num_sites_; ++i) offsets_[i + 1] += offsets_[i];
  neighbors_.resize(edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [i, j] : edges_) neighbors_[fill[i]++] = static_cast<std::uint32_t>(j);
}

SpinConfig SpinConfig::zeros(std::size_t num_sites) { return uniform(num_sites, 0, 0.0); }

SpinConfig SpinConfig::uniform(std::size_t num_sites, std::int8_t eta, double g) {
  SpinConfig c;
  c.eta.assign(num_sites, eta);
  c.g.assign(num_sites, g);
  return c;
}

void SpinConfig::validate(std::size_t num_sites) const {
  if (eta.size() != num_sites || g.size() != num_sites)
    throw ConfigError("configuration has " + std::to_string(eta.size()) + " spins and " +
                      std::to_string(g.size()) + " graffiti values for a lattice of " +
                      std::to_string(num_sites) + " sites");
  for (auto s : eta)
    if (s < -1 || s > 1) throw ConfigError("agent spin outside {-1,0,+1}");
  for (double x : g)
    if (!std::isfinite(x)) throw ConfigError("graffiti value is not finite");
}

SpinConfig SpinConfig::flipped() const {
  SpinConfig c = *this;
  for (auto& s : c.eta) s = static_cast<std::int8_t>(-s);
  for (auto& x : c.g) x = -x;
  return c;
}

double total_energy(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params) {
  config.validate(lattice.num_sites());
  long double bond = 0.0L;
  for (const auto& [i, j] : lattice.directed_edges()) bond += config.eta[i] * config.g[j];
  long double onsite = 0.0L, occupation = 0.0L, quadratic = 0.0L;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const long double s = config.eta[i];
    const long double g = config.g[i];
    onsite += s * g;
    occupation += s * s;
    quadratic += g * g;
  }
  const long double minus_h = params.J * bond + params.K * onsite + params.alpha * occupation -
                              params.lambda * quadratic;
  return static_cast<double>(-minus_h);
}

double agent_field(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params,
                   std::size_t site) {
  if (site >= lattice.num_sites()) throw DomainError("site index out of range");
  double sum = 0.0;
  for (auto j : lattice.neighbors(site)) sum += config.eta[j];
  return params.J * sum + params.K * config.eta[site];
}

double graffiti_field(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params,
                      std::size_t site) {
  if (site >= lattice.num_sites()) throw DomainError("site index out of range");
  double sum = 0.0;
  for (auto j : lattice.neighbors(site)) sum += config.g[j];
  return params.J * sum + params.K * config.g[site];
}

double eta_change_delta(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params,
                        std::size_t site, int new_eta) {
  const double f = graffiti_field(config, lattice, params, site);
  const int old = config.eta[site];
  return -(f * (new_eta - old) + params.alpha * (new_eta * new_eta - old * old));
}

Observables measure(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params) {
  config.validate(lattice.num_sites());
  const auto V = static_cast<double>(lattice.num_sites());
  std::int64_t occupied = 0, excess = 0;
  long double gsum = 0.0L;
  for (std::size_t i = 0; i < config.size(); ++i) {
    occupied += config.eta[i] != 0;
    excess += config.eta[i];
    gsum += config.g[i];
  }
  Observables o;
  o.b = static_cast<double>(occupied) / V;
  o.n = static_cast<double>(excess) / V;
  o.G = static_cast<double>(gsum / V);
  o.energy_per_site = total_energy(config, lattice, params) / V;
  return o;
}

}  // namespace gi
