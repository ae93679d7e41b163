#pragma once

#include <cstdint>
#include <ostream>

#include "gi/lattice.hpp"

namespace gi {

// Plain-text snapshots of a torus configuration. Both files open with
//   # L=<side> J=<J> K=<K> alpha=<alpha> lambda=<lambda> seed=<seed>
// followed by L rows in row-major site order. The agent grid uses one
// character per site ('+', '-', '0'); the graffiti file holds L comma
// separated reals per row.

void write_eta_grid(std::ostream& out, const SpinConfig& config, const Lattice& lattice,
                    const CouplingParams& params, std::uint64_t seed);

void write_graffiti_csv(std::ostream& out, const SpinConfig& config, const Lattice& lattice,
                        const CouplingParams& params, std::uint64_t seed);

}  // namespace gi
