#include "gi/snapshot.hpp"

#include "gi/csv.hpp"
#include "gi/errors.hpp"

namespace gi {

namespace {

void write_header(std::ostream& out, const Lattice& lattice, const CouplingParams& params,
                  std::uint64_t seed) {
  out << "# L=" << lattice.side() << " J=" << format_real(params.J) << " K=" << format_real(params.K)
      << " alpha=" << format_real(params.alpha) << " lambda=" << format_real(params.lambda)
      << " seed=" << seed << '\n';
}

void require_torus(const SpinConfig& config, const Lattice& lattice) {
  if (lattice.kind() != Lattice::Kind::torus2d)
    throw ConfigError("grid snapshots are only defined for torus lattices");
  config.validate(lattice.num_sites());
}

}  // namespace

void write_eta_grid(std::ostream& out, const SpinConfig& config, const Lattice& lattice,
                    const CouplingParams& params, std::uint64_t seed) {
  require_torus(config, lattice);
  write_header(out, lattice, params, seed);
  const auto L = static_cast<std::size_t>(lattice.side());
  for (std::size_t r = 0; r < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      const int s = config.eta[r * L + c];
      out << (s > 0 ? '+' : s < 0 ? '-' : '0');
    }
    out << '\n';
  }
}

void write_graffiti_csv(std::ostream& out, const SpinConfig& config, const Lattice& lattice,
                        const CouplingParams& params, std::uint64_t seed) {
  require_torus(config, lattice);
  write_header(out, lattice, params, seed);
  const auto L = static_cast<std::size_t>(lattice.side());
  for (std::size_t r = 0; r < L; ++r) {
    for (std::size_t c = 0; c < L; ++c) {
      if (c) out << ',';
      out << format_real(config.g[r * L + c]);
    }
    out << '\n';
  }
}

}  // namespace gi
