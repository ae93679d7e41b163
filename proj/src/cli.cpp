#include "gi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "gi/abm.hpp"
#include "gi/bounds.hpp"
#include "gi/csv.hpp"
#include "gi/errors.hpp"
#include "gi/lattice.hpp"
#include "gi/meanfield.hpp"
#include "gi/sampler.hpp"
#include "gi/snapshot.hpp"

#ifndef GI_VERSION
#define GI_VERSION "unknown"
#endif

namespace gi::cli {
namespace {

namespace fs = std::filesystem;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Collects the files a run writes so the manifest can list them.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {}

  std::ofstream open(const std::string& name) {
    fs::create_directories(dir_);
    std::ofstream f(dir_ / name);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    files_.push_back(name);
    return f;
  }

  const fs::path& path() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out_dir = "gi-out";
};

void add_seed(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed")->envname("GI_SEED")->capture_default_str();
}

void add_out(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_dir, "Directory for CSV files and the run manifest")->capture_default_str();
}

void add_couplings(CLI::App* sub, CouplingParams& p) {
  sub->add_option("--j,--J", p.J, "Neighbour agent-graffiti coupling J >= 0")->capture_default_str();
  sub->add_option("--k,--K", p.K, "On-site agent-graffiti coupling K >= 0")->capture_default_str();
  sub->add_option("--lambda", p.lambda, "Graffiti suppression lambda > 0")->capture_default_str();
  sub->add_option("--alpha", p.alpha, "Occupation proclivity alpha")->capture_default_str();
}

void print(std::ostream& out, std::string_view key, double value) { out << key << '=' << format_real(value) << '\n'; }
template <typename T>
void print(std::ostream& out, std::string_view key, const T& value) {
  out << key << '=' << value << '\n';
}

// ---- mcmc -------------------------------------------------------------------

struct McmcArgs {
  Common common;
  int L = 16;
  CouplingParams params{1.0, 1.0, 0.0, 1.0};
  mc::ChainSpec spec{.seed = 1, .burn_in_sweeps = 1000, .sweeps = 10000, .thinning = 1};
  bool snapshot = false;
};

const std::map<std::string, mc::InitKind> kInitNames = {
    {"red", mc::InitKind::all_red},
    {"blue", mc::InitKind::all_blue},
    {"empty", mc::InitKind::empty},
    {"random", mc::InitKind::random},
};

void run_mcmc(McmcArgs& a, OutputDir& dir, std::ostream& out) {
  a.params.validate();
  a.spec.seed = a.common.seed;
  a.spec.validate();
  const Lattice lattice = Lattice::torus(a.L);
  const mc::ChainResult r = mc::run_chain(lattice, a.params, a.spec);

  auto f = dir.open("timeseries.csv");
  CsvWriter csv(f);
  csv.header({"sweep", "b", "n", "G", "energy_per_site"});
  for (const auto& s : r.series) csv.row(s.sweep, s.obs.b, s.obs.n, s.obs.G, s.obs.energy_per_site);

  if (a.snapshot) {
    auto grid = dir.open("final_eta.txt");
    write_eta_grid(grid, r.final_config, lattice, a.params, a.spec.seed);
    auto g = dir.open("final_graffiti.csv");
    write_graffiti_csv(g, r.final_config, lattice, a.params, a.spec.seed);
  }

  const auto summary = [&](std::string_view name, const SeriesSummary& s) {
    out << name << '=' << format_real(s.mean) << " std_error=" << format_real(s.std_error)
        << " tau_int=" << format_real(s.tau_int) << '\n';
  };
  print(out, "samples", r.stats.samples);
  summary("b", r.stats.b);
  summary("n", r.stats.n);
  summary("abs_n", r.stats.abs_n);
  summary("G", r.stats.G);
  summary("energy_per_site", r.stats.energy_per_site);
  print(out, "binder_cumulant", r.stats.binder_cumulant);
}

// ---- oracle -----------------------------------------------------------------

struct OracleArgs {
  Common common;
  int L = 3;
  CouplingParams params{0.5, 0.5, 0.0, 1.0};
  mc::ChainSpec spec{.seed = 1, .burn_in_sweeps = 100, .sweeps = 100000, .thinning = 10};
};

void run_oracle(OracleArgs& a, OutputDir& dir, std::ostream& out) {
  a.params.validate();
  a.spec.seed = a.common.seed;
  a.spec.validate();
  const Lattice lattice = Lattice::torus(a.L);
  const mc::EtaDistribution exact = mc::exact_eta_marginal(lattice, a.params);
  const mc::OracleComparison cmp = mc::compare_to_oracle(lattice, a.params, a.spec);

  auto f = dir.open("oracle.csv");
  CsvWriter csv(f);
  csv.header({"index", "exact", "empirical"});
  for (std::size_t i = 0; i < exact.num_states(); ++i) csv.row(i, exact.probability(i), cmp.empirical[i]);

  print(out, "states", exact.num_states());
  print(out, "samples", cmp.samples);
  print(out, "tv_distance", cmp.tv_distance);
}

// ---- meanfield --------------------------------------------------------------

enum class MfMode { minimize, transition, tricritical, phase };

struct MeanfieldArgs {
  Common common;
  MfMode mode = MfMode::minimize;
  double b_R = 0.5;
  std::optional<double> alpha;
  std::optional<double> mu;
  std::optional<double> J;
  std::optional<double> lambda;
  int grid = 800;
  double tolerance = 1e-6;
  double scan_lo = 0.2, scan_hi = 0.5, scan_tolerance = 1e-4;
  mf::Range b_R_range{0.1, 0.9, 9};
  mf::Range mu_range{0.5, 6.0, 12};
};

mf::MFParams meanfield_params(const MeanfieldArgs& a) {
  const double b_R = a.alpha ? mf::ambient_occupancy(*a.alpha) : a.b_R;
  if (a.mu) {
    mf::MFParams p = mf::MFParams::from_ambient(b_R, *a.mu);
    p.validate();
    return p;
  }
  if (a.J && a.lambda) {
    mf::MFParams p = mf::MFParams::from_couplings(*a.J, mf::alpha_of(b_R), *a.lambda);
    p.b_R = b_R;
    p.validate();
    return p;
  }
  throw DomainError("meanfield minimize needs --mu, or --j together with --lambda");
}

void run_meanfield(MeanfieldArgs& a, OutputDir& dir, std::ostream& out) {
  mf::TransitionOptions topt;
  topt.tolerance = a.tolerance;
  topt.solver.grid = a.grid;
  if (a.grid < 10) throw DomainError("--grid must be >= 10");
  if (!(a.tolerance > 0.0)) throw DomainError("--tolerance must be > 0");
  const double b_R = a.alpha ? mf::ambient_occupancy(*a.alpha) : a.b_R;
  if (!(b_R > 0.0 && b_R < 1.0)) throw DomainError("b_R must lie in (0,1)");

  auto f = dir.open("meanfield.csv");
  CsvWriter csv(f);
  switch (a.mode) {
    case MfMode::minimize: {
      const mf::MFParams p = meanfield_params(a);
      const mf::MFSolution s = mf::minimize_phi(p, topt.solver);
      csv.header({"b_R", "alpha", "mu", "b", "n", "G", "theta", "phi", "delta_phi", "trivial", "newton_converged"});
      const double G = s.G.value_or(std::nan(""));
      csv.row(p.b_R, p.alpha(), p.mu, s.b, s.n, G, s.theta, s.phi_value, s.delta_phi, int{s.is_trivial},
              int{s.newton_converged});
      print(out, "b_R", p.b_R);
      print(out, "alpha", p.alpha());
      print(out, "mu", p.mu);
      print(out, "b", s.b);
      print(out, "n", s.n);
      if (s.G) print(out, "G", *s.G);
      print(out, "theta", s.theta);
      print(out, "phi", s.phi_value);
      print(out, "delta_phi", s.delta_phi);
      print(out, "trivial", s.is_trivial ? "true" : "false");
      print(out, "residual_1", s.residuals.r1);
      print(out, "residual_2", s.residuals.r2);
      print(out, "newton_converged", s.newton_converged ? "true" : "false");
      break;
    }
    case MfMode::transition: {
      const mf::TransitionReport t = mf::transition(b_R, topt);
      csv.header({"b_R", "mu_T", "mu_S", "order", "n_jump"});
      csv.row(t.b_R, t.mu_T, t.mu_S, mf::to_string(t.order), t.n_jump);
      print(out, "b_R", t.b_R);
      print(out, "mu_T", t.mu_T);
      print(out, "mu_S", t.mu_S);
      print(out, "order", mf::to_string(t.order));
      print(out, "n_jump", t.n_jump);
      break;
    }
    case MfMode::tricritical: {
      const mf::TricriticalResult t = mf::tricritical_scan(a.scan_lo, a.scan_hi, a.scan_tolerance, topt);
      csv.header({"b_R", "alpha", "iterations"});
      csv.row(t.b_R, t.alpha, t.iterations);
      print(out, "b_R", t.b_R);
      print(out, "alpha", t.alpha);
      print(out, "iterations", t.iterations);
      break;
    }
    case MfMode::phase: {
      const auto rows = mf::phase_diagram(a.b_R_range, a.mu_range, topt);
      csv.header({"b_R", "mu", "b", "n", "G_reduced", "phi", "ordered", "order"});
      for (const auto& r : rows) csv.row(r.b_R, r.mu, r.b, r.n, r.G_reduced, r.phi, int{r.ordered}, mf::to_string(r.order));
      print(out, "rows", rows.size());
      break;
    }
  }
}

// ---- bounds -----------------------------------------------------------------

struct BoundsArgs {
  Common common;
  std::vector<double> J{1.0}, K{1.0}, lambda{1.0}, alpha{0.0};
};

void run_bounds(BoundsArgs& a, OutputDir& dir, std::ostream& out) {
  std::vector<CouplingParams> points;
  for (double J : a.J)
    for (double K : a.K)
      for (double lambda : a.lambda)
        for (double alpha : a.alpha) {
          CouplingParams p{J, K, alpha, lambda};
          p.validate();
          points.push_back(p);
        }

  auto f = dir.open("bounds.csv");
  CsvWriter csv(f);
  csv.header({"J", "K", "lambda", "alpha", "bound_00", "bound_pm", "bound_p0", "epsilon", "peierls", "piy_epsilon",
              "delta_alpha_min", "classification"});
  bool first = true;
  for (const auto& p : points) {
    const bounds::BoundReport r = bounds::bound_report(p);
    csv.row(p.J, p.K, p.lambda, p.alpha, r.incoherent.bound_00, r.incoherent.bound_pm, r.incoherent.bound_p0,
            r.incoherent.epsilon, r.peierls_total, r.piy, r.sparse.delta_alpha, bounds::to_string(r.classification));
    if (!first) out << '\n';
    first = false;
    print(out, "J", p.J);
    print(out, "K", p.K);
    print(out, "lambda", p.lambda);
    print(out, "alpha", p.alpha);
    print(out, "bound_00", r.incoherent.bound_00);
    print(out, "bound_pm", r.incoherent.bound_pm);
    print(out, "bound_p0", r.incoherent.bound_p0);
    print(out, "epsilon", r.incoherent.epsilon);
    print(out, "peierls", r.peierls_total);
    print(out, "peierls_safe", r.peierls_safe);
    print(out, "piy_epsilon", r.piy);
    print(out, "epsilon0", r.epsilon0);
    print(out, "gamma", r.sparse.gamma);
    print(out, "delta_alpha_min", r.sparse.delta_alpha);
    print(out, "classification", bounds::to_string(r.classification));
  }
}

// ---- abm --------------------------------------------------------------------

struct AbmArgs {
  Common common;
  abm::AbmConfig config{};
  bool long_run = false;
};

void write_grid(std::ostream& f, const std::vector<std::int32_t>& cells, int L) {
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      if (c) f << ',';
      f << cells[static_cast<std::size_t>(r * L + c)];
    }
    f << '\n';
  }
}

void run_abm(AbmArgs& a, OutputDir& dir, std::ostream& out) {
  a.config.seed = a.common.seed;
  const abm::AbmRunResult r = abm::abm_run(a.config);

  auto f = dir.open("abm_index.csv");
  CsvWriter csv(f);
  csv.header({"step", "segregation_index"});
  for (std::size_t t = 0; t < r.index.size(); ++t) csv.row(t, r.index[t]);

  for (const auto& snap : r.snapshots) {
    const std::string tag = "_t" + std::to_string(snap.time) + ".csv";
    auto agents = dir.open("abm_agents" + tag);
    write_grid(agents, snap.net_agents, a.config.L);
    auto graffiti = dir.open("abm_graffiti" + tag);
    write_grid(graffiti, snap.net_graffiti, a.config.L);
  }

  const std::size_t tail = std::max<std::size_t>(1, r.index.size() / 10);
  const double tail_mean =
      std::accumulate(r.index.end() - static_cast<std::ptrdiff_t>(tail), r.index.end(), 0.0) / static_cast<double>(tail);
  print(out, "steps", a.config.steps);
  print(out, "agents", r.final_state.agents.size());
  print(out, "final_index", r.index.back());
  print(out, "tail_mean_index", tail_mean);
}

// ---- driver -----------------------------------------------------------------

// The manifest is itself a config file: the [<command>] section holds every
// option of the run (unset optional values are left out), so
// `gi --config <manifest> <command>` repeats it.
void write_manifest(const CLI::App& sub, const std::string& command, const Common& common, OutputDir& dir,
                    const std::string& started) {
  const std::string finished = utc_now();
  const std::vector<std::string> outputs = dir.files();
  auto f = dir.open(command + "_manifest.ini");
  f << '[' << command << "]\n";
  std::istringstream options(sub.config_to_str(true, false));
  for (std::string line; std::getline(options, line);)
    if (!line.ends_with("=\"\"")) f << line << '\n';
  f << "\n[manifest]\n";
  f << "command=\"" << command << "\"\n";
  f << "version=\"" << GI_VERSION << "\"\n";
  f << "seed=" << common.seed << '\n';
  f << "started=\"" << started << "\"\n";
  f << "finished=\"" << finished << "\"\n";
  f << "outputs=\"";
  for (std::size_t i = 0; i < outputs.size(); ++i) f << (i ? "," : "") << outputs[i];
  f << "\"\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graffiti-interaction model: Gibbs sampling, mean field, rigorous bounds and agent simulation", "gi"};
  app.set_version_flag("--version", GI_VERSION);
  app.set_config("--config", "", "INI file with one section per subcommand; flags override its values");
  app.require_subcommand(1);

  McmcArgs mcmc;
  auto* mcmc_cmd = app.add_subcommand("mcmc", "Block Gibbs chain on an L x L torus");
  mcmc_cmd->add_option("--L", mcmc.L, "Torus side, >= 3")->capture_default_str();
  add_couplings(mcmc_cmd, mcmc.params);
  mcmc_cmd->add_option("--burn-in", mcmc.spec.burn_in_sweeps, "Discarded sweeps")->capture_default_str();
  mcmc_cmd->add_option("--sweeps", mcmc.spec.sweeps, "Measurement sweeps")->capture_default_str();
  mcmc_cmd->add_option("--thinning", mcmc.spec.thinning, "Record every k-th sweep")->capture_default_str();
  mcmc_cmd->add_option("--init", mcmc.spec.init, "Initial agents")
      ->transform(CLI::CheckedTransformer(kInitNames, CLI::ignore_case))
      ->default_str("red");
  mcmc_cmd->add_option("--p-occupy", mcmc.spec.p_occupy, "Occupation probability for --init random")
      ->capture_default_str();
  mcmc_cmd->add_flag("--snapshot", mcmc.snapshot, "Write the final configuration");
  add_seed(mcmc_cmd, mcmc.common);
  add_out(mcmc_cmd, mcmc.common);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the sampler with the exact agent marginal");
  oracle_cmd->add_option("--L", oracle.L, "Torus side, >= 3")->capture_default_str();
  add_couplings(oracle_cmd, oracle.params);
  oracle_cmd->add_option("--burn-in", oracle.spec.burn_in_sweeps, "Discarded sweeps")->capture_default_str();
  oracle_cmd->add_option("--sweeps", oracle.spec.sweeps, "Measurement sweeps")->capture_default_str();
  oracle_cmd->add_option("--thinning", oracle.spec.thinning, "Record every k-th sweep")->capture_default_str();
  add_seed(oracle_cmd, oracle.common);
  add_out(oracle_cmd, oracle.common);

  MeanfieldArgs meanfield;
  const std::map<std::string, MfMode> mode_names = {{"minimize", MfMode::minimize},
                                                    {"transition", MfMode::transition},
                                                    {"tricritical", MfMode::tricritical},
                                                    {"phase", MfMode::phase}};
  auto* mf_cmd = app.add_subcommand("meanfield", "Complete-graph free energy minimization");
  mf_cmd->add_option("--mode", meanfield.mode, "minimize, transition, tricritical or phase")
      ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case))
      ->default_str("minimize");
  mf_cmd->add_option("--b-r", meanfield.b_R, "Ambient occupancy in (0,1)")->capture_default_str();
  mf_cmd->add_option("--alpha", meanfield.alpha, "Proclivity; takes precedence over --b-r");
  auto* mu_opt = mf_cmd->add_option("--mu", meanfield.mu, "mu = J^2 / (2 lambda)");
  mf_cmd->add_option("--j,--J", meanfield.J, "Coupling J; with --lambda replaces --mu")->excludes(mu_opt);
  mf_cmd->add_option("--lambda", meanfield.lambda, "Graffiti suppression; with --j replaces --mu")->excludes(mu_opt);
  mf_cmd->add_option("--grid", meanfield.grid, "Grid points per axis")->capture_default_str();
  mf_cmd->add_option("--tolerance", meanfield.tolerance, "Accuracy of mu_T")->capture_default_str();
  mf_cmd->add_option("--scan-lo", meanfield.scan_lo, "Tricritical scan: first-order end")->capture_default_str();
  mf_cmd->add_option("--scan-hi", meanfield.scan_hi, "Tricritical scan: continuous end")->capture_default_str();
  mf_cmd->add_option("--scan-tolerance", meanfield.scan_tolerance, "Tricritical scan: accuracy in b_R")
      ->capture_default_str();
  mf_cmd->add_option("--b-r-min", meanfield.b_R_range.lo, "Phase diagram")->capture_default_str();
  mf_cmd->add_option("--b-r-max", meanfield.b_R_range.hi, "Phase diagram")->capture_default_str();
  mf_cmd->add_option("--b-r-steps", meanfield.b_R_range.steps, "Phase diagram")->capture_default_str();
  mf_cmd->add_option("--mu-min", meanfield.mu_range.lo, "Phase diagram")->capture_default_str();
  mf_cmd->add_option("--mu-max", meanfield.mu_range.hi, "Phase diagram")->capture_default_str();
  mf_cmd->add_option("--mu-steps", meanfield.mu_range.steps, "Phase diagram")->capture_default_str();
  add_out(mf_cmd, meanfield.common);

  BoundsArgs bnd;
  auto* bounds_cmd = app.add_subcommand("bounds", "Rigorous regime bounds; comma separated lists give a sweep");
  bounds_cmd->add_option("--j,--J", bnd.J, "J values")->delimiter(',')->capture_default_str();
  bounds_cmd->add_option("--k,--K", bnd.K, "K values")->delimiter(',')->capture_default_str();
  bounds_cmd->add_option("--lambda", bnd.lambda, "lambda values")->delimiter(',')->capture_default_str();
  bounds_cmd->add_option("--alpha", bnd.alpha, "alpha values")->delimiter(',')->capture_default_str();
  add_out(bounds_cmd, bnd.common);

  AbmArgs abm_args;
  const std::map<std::string, abm::DecayMode> decay_names = {{"binomial", abm::DecayMode::binomial},
                                                             {"multiplicative", abm::DecayMode::multiplicative}};
  auto& cfg = abm_args.config;
  auto* abm_cmd = app.add_subcommand("abm", "Agent-based tagging simulation");
  auto* abm_L = abm_cmd->add_option("--L", cfg.L, "Grid side, >= 3")->capture_default_str();
  auto* abm_red = abm_cmd->add_option("--n-red", cfg.n_red, "Red agents")->capture_default_str();
  auto* abm_blue = abm_cmd->add_option("--n-blue", cfg.n_blue, "Blue agents")->capture_default_str();
  abm_cmd->add_option("--p-m-unmarked", cfg.p_m_unmarked, "Tag probability without opposite graffiti")
      ->capture_default_str();
  abm_cmd->add_option("--p-m-marked", cfg.p_m_marked, "Tag probability on opposite graffiti")->capture_default_str();
  abm_cmd->add_option("--p-g", cfg.p_g, "Per-unit graffiti removal probability")->capture_default_str();
  auto* abm_steps = abm_cmd->add_option("--steps", cfg.steps, "Steps")->capture_default_str();
  abm_cmd->add_option("--snapshots", cfg.snapshot_times, "Snapshot times")->delimiter(',');
  abm_cmd->add_option("--decay", cfg.decay, "binomial or multiplicative")
      ->transform(CLI::CheckedTransformer(decay_names, CLI::ignore_case))
      ->default_str("binomial");
  abm_cmd->add_flag("--long-run", abm_args.long_run,
                    "Full-scale run: 100 x 100, 1e5 agents per colour, 1.5e5 steps unless given explicitly");
  add_seed(abm_cmd, abm_args.common);
  add_out(abm_cmd, abm_args.common);

  for (auto* sub : {mcmc_cmd, oracle_cmd, mf_cmd, bounds_cmd, abm_cmd}) sub->configurable();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (abm_args.long_run) {
    if (abm_L->count() == 0) cfg.L = 100;
    if (abm_red->count() == 0) cfg.n_red = 100'000;
    if (abm_blue->count() == 0) cfg.n_blue = 100'000;
    if (abm_steps->count() == 0) cfg.steps = 150'000;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Common* common = nullptr;
  if (sub == mcmc_cmd) common = &mcmc.common;
  if (sub == oracle_cmd) common = &oracle.common;
  if (sub == mf_cmd) common = &meanfield.common;
  if (sub == bounds_cmd) common = &bnd.common;
  if (sub == abm_cmd) common = &abm_args.common;

  try {
    const std::string started = utc_now();
    OutputDir dir(common->out_dir);
    if (sub == mcmc_cmd) run_mcmc(mcmc, dir, out);
    if (sub == oracle_cmd) run_oracle(oracle, dir, out);
    if (sub == mf_cmd) run_meanfield(meanfield, dir, out);
    if (sub == bounds_cmd) run_bounds(bnd, dir, out);
    if (sub == abm_cmd) run_abm(abm_args, dir, out);
    write_manifest(*sub, command, *common, dir, started);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << command << ": " << e.what() << '\n' << "Run with --help for more information.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << command << ": error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace gi::cli
