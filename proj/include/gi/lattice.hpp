#pragma once

// Lattice, configurations and the graffiti-interaction energy
//
//   -H(s) = J sum_{(i,j)} eta_i g_j + K sum_i eta_i g_i
//           + alpha sum_i eta_i^2 - lambda sum_i g_i^2
//
// The bond sum runs over ordered neighbour pairs, i.e. both eta_i g_j and
// eta_j g_i appear for every undirected bond. Each g therefore couples to
// all of its neighbouring agent spins with strength J.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gi {

struct CouplingParams {
  double J = 0.0;       // neighbour agent-graffiti coupling, >= 0
  double K = 0.0;       // on-site agent-graffiti coupling, >= 0
  double alpha = 0.0;   // occupation proclivity
  double lambda = 1.0;  // graffiti suppression, > 0

  /// Throws DomainError naming the first violated invariant.
  void validate() const;
};

class Lattice {
 public:
  enum class Kind { torus2d, explicit_graph };
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Standard L x L square torus, site index = row * L + col. Requires L >= 3.
  static Lattice torus(int L);

  /// Arbitrary graph from a directed edge list. Every (i,j) must come with
  /// (j,i); self edges are rejected.
  static Lattice from_edges(std::size_t num_sites, std::vector<Edge> directed_edges);

  std::size_t num_sites() const { return num_sites_; }
  Kind kind() const { return kind_; }
  /// Side length for tori, 0 otherwise.
  int side() const { return side_; }

  std::span<const Edge> directed_edges() const { return edges_; }

  std::span<const std::uint32_t> neighbors(std::size_t site) const {
    return {neighbors_.data() + offsets_[site], offsets_[site + 1] - offsets_[site]};
  }
  std::size_t degree(std::size_t site) const { return offsets_[site + 1] - offsets_[site]; }

 private:
  Lattice() = default;
  void build_adjacency();

  Kind kind_ = Kind::explicit_graph;
  int side_ = 0;
  std::size_t num_sites_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
};

struct SpinConfig {
  std::vector<std::int8_t> eta;  // -1 blue, 0 vacant, +1 red
  std::vector<double> g;         // graffiti imbalance

  static SpinConfig zeros(std::size_t num_sites);
  static SpinConfig uniform(std::size_t num_sites, std::int8_t eta, double g);

  std::size_t size() const { return eta.size(); }

  /// Throws ConfigError unless both arrays have `num_sites` entries, every
  /// eta is in {-1,0,+1} and every g is finite.
  void validate(std::size_t num_sites) const;

  /// Global colour flip (eta, g) -> (-eta, -g).
  SpinConfig flipped() const;
};

struct Observables {
  double b = 0.0;  // occupied fraction (N+ + N-)/V
  double n = 0.0;  // red excess (N+ - N-)/V
  double G = 0.0;  // mean graffiti
  double energy_per_site = 0.0;
};

double total_energy(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params);

/// h_i = J sum_{j~i} eta_j + K eta_i, the coefficient of g_i in -H.
/// Given all eta, g_i ~ Normal(h_i / (2 lambda), 1 / (2 lambda)).
double agent_field(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params,
                   std::size_t site);

/// f_i = J sum_{j~i} g_j + K g_i, the coefficient of eta_i in -H.
/// Given all g, P(eta_i = s) is proportional to exp(f_i s + alpha s^2).
double graffiti_field(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params,
                      std::size_t site);

/// Energy change from setting eta_i to `new_eta`, all else fixed.
double eta_change_delta(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params,
                        std::size_t site, int new_eta);

Observables measure(const SpinConfig& config, const Lattice& lattice, const CouplingParams& params);

}  // namespace gi
