// Acceptance gate: one PASS/FAIL line per criterion. With an argument such as
// "AC3" only that criterion runs. Exit status is 0 iff every selected
// criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gi/abm.hpp"
#include "gi/bounds.hpp"
#include "gi/csv.hpp"
#include "gi/meanfield.hpp"
#include "gi/rng.hpp"
#include "gi/sampler.hpp"

using namespace gi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string id;
  double budget_seconds;  // stated runtime limit; 0 when none is stated
  std::function<Outcome()> run;
};

std::string fmt(double x) { return format_real(x); }

Outcome ac1_oracle() {
  const Lattice lat = Lattice::torus(3);
  const CouplingParams p{0.5, 0.5, 0.0, 1.0};
  mc::ChainSpec spec;
  spec.seed = 20240611;
  spec.burn_in_sweeps = 1000;
  spec.thinning = 10;
  spec.sweeps = 10'000'000;
  spec.init = mc::InitKind::random;
  const mc::OracleComparison cmp = mc::compare_to_oracle(lat, p, spec);
  return {cmp.samples == 1'000'000 && cmp.tv_distance < 0.02,
          "TV=" + fmt(cmp.tv_distance) + " over " + std::to_string(cmp.samples) + " samples (need < 0.02)"};
}

Outcome ac2_tricritical() {
  const mf::TricriticalResult t = mf::tricritical_scan();
  const double alpha_third = mf::alpha_of(1.0 / 3.0);
  const double alpha_err = std::abs(alpha_third + 2 * std::numbers::ln2);
  const bool ok = std::abs(t.b_R - 1.0 / 3.0) <= 0.02 && alpha_err <= 1e-10;
  return {ok, "b_R=" + fmt(t.b_R) + " (need 1/3 +- 0.02), |alpha(1/3)+2log2|=" + fmt(alpha_err) + " (need <= 1e-10)"};
}

Outcome ac3_continuous() {
  const mf::TransitionReport t = mf::transition(0.5);
  const bool ok = std::abs(t.mu_T - 2.0) <= 1e-4 && t.n_jump < 1e-3 && t.order == mf::TransitionOrder::continuous;
  return {ok, "mu_T=" + fmt(t.mu_T) + " (need 2 +- 1e-4), n_jump=" + fmt(t.n_jump) + " (need < 1e-3), order=" +
                  mf::to_string(t.order)};
}

Outcome ac4_first_order() {
  constexpr double kFrozenMuT = 4.32965005;  // brute-force bisection oracle
  const mf::TransitionReport t = mf::transition(0.2);
  const bool ok = t.mu_T < 5.0 - 1e-3 && t.n_jump > 1e-3 && std::abs(t.mu_T - kFrozenMuT) < 1e-5;
  return {ok, "mu_T=" + fmt(t.mu_T) + " (need < 4.999, regression 4.32965005 +- 1e-5), n_jump=" + fmt(t.n_jump) +
                  " (need > 1e-3)"};
}

Outcome ac5_monotone() {
  bool ok = true;
  std::ostringstream d;
  for (double bR : {0.2, 1.0 / 3.0, 0.5, 0.8}) {
    const mf::Range mu{0.5, 1.0 / bR + 3.0, 200};
    double prev = -1.0, worst_drop = 0.0;
    for (int k = 0; k < mu.steps; ++k) {
      const double n = mf::minimize_phi(mf::MFParams::from_ambient(bR, mu.at(k))).n;
      if (k > 0) worst_drop = std::max(worst_drop, prev - n);
      prev = n;
    }
    ok = ok && worst_drop <= 1e-9;
    d << "b_R=" << fmt(bR) << " max drop " << fmt(worst_drop) << "; ";
  }
  d << "(need <= 1e-9)";
  return {ok, d.str()};
}

Outcome ac6_exponent() {
  const double bR = 0.5, muS = 1.0 / bR;
  std::vector<double> x, y;
  for (int k = 0; k <= 20; ++k) {
    const double delta = std::pow(10.0, -4.0 + 2.0 * k / 20.0);
    const mf::MFSolution s = mf::minimize_phi(mf::MFParams::from_ambient(bR, muS + delta));
    if (!(s.n > 0.0)) return {false, "trivial minimizer at mu - mu_S = " + fmt(delta)};
    x.push_back(std::log(delta));
    y.push_back(std::log(s.n));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  const double slope = sxy / sxx;
  return {slope >= 0.45 && slope <= 0.55, "slope=" + fmt(slope) + " (need in [0.45, 0.55])"};
}

Outcome ac7_two_paths() {
  Rng rng(7007);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CouplingParams p{5 * rng.uniform(), 5 * rng.uniform(), 10 * rng.uniform() - 5, 0.1 + 5 * rng.uniform()};
    const bounds::IncoherentBounds b = bounds::incoherent_bond_bounds(p);
    const double pp = bounds::constrained_logz_per_site(bounds::BondPattern::coherent, p);
    const auto ratio = [&](bounds::BondPattern q) {
      return std::exp(0.5 * (bounds::constrained_logz_per_site(q, p) - pp));
    };
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    worst = std::max({worst, rel(b.bound_00, ratio(bounds::BondPattern::vacant_vacant)),
                      rel(b.bound_pm, ratio(bounds::BondPattern::opposed)),
                      rel(b.bound_p0, ratio(bounds::BondPattern::mixed_void))});
  }
  const double e0_err = std::abs(bounds::epsilon0() - (std::numbers::sqrt2 - 1.0));
  return {worst <= 1e-12 && e0_err <= 1e-12,
          "max relative deviation " + fmt(worst) + ", |eps0 - (sqrt2 - 1)|=" + fmt(e0_err) + " (need <= 1e-12)"};
}

Outcome ac8_regimes() {
  struct Point {
    CouplingParams p;
    bounds::Regime expected;
  };
  const Point points[] = {{{5, 5, 0, 1}, bounds::Regime::proven_ordered},
                          {{0.01, 0.01, 0, 1}, bounds::Regime::proven_unique_hightemp},
                          {{1, 1, -10, 1}, bounds::Regime::proven_unique_sparse}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [p, expected] : points) {
    const bounds::BoundReport r = bounds::bound_report(p);
    const bool hit = r.classification == expected;
    ok = ok && hit;
    d << "(" << fmt(p.J) << "," << fmt(p.K) << "," << fmt(p.lambda) << "," << fmt(p.alpha) << ")->"
      << bounds::to_string(r.classification) << (hit ? "" : " [expected " + std::string(bounds::to_string(expected)) + "]")
      << " peierls=" << fmt(r.peierls_safe) << " piy=" << fmt(r.piy) << " delta_alpha=" << fmt(r.sparse.delta_alpha)
      << "; ";
  }
  return {ok, d.str()};
}

Outcome ac9_phases() {
  const Lattice lat = Lattice::torus(32);
  mc::ChainSpec spec;
  spec.seed = 99;
  spec.burn_in_sweeps = 0;
  spec.sweeps = 10'000;
  spec.init = mc::InitKind::all_red;
  const double ordered = mc::run_chain(lat, {3.0, 1.0, 0.0, 1.0}, spec).stats.n.mean;
  const double disordered = mc::run_chain(lat, {0.1, 1.0, 0.0, 1.0}, spec).stats.n.mean;
  return {ordered > 0.5 && std::abs(disordered) < 0.05,
          "J=3: <n>=" + fmt(ordered) + " (need > 0.5); J=0.1: <n>=" + fmt(disordered) + " (need |.| < 0.05)"};
}

Outcome ac10_abm() {
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    double tail[2];
    int slot = 0;
    for (double p_g : {0.25, 0.75}) {
      abm::AbmConfig c;
      c.L = 50;
      c.n_red = c.n_blue = 20'000;
      c.steps = 10'000;
      c.p_g = p_g;
      c.seed = seed;
      const auto index = abm::abm_run(c).index;
      const std::size_t n = static_cast<std::size_t>(c.steps / 10);
      tail[slot++] = std::accumulate(index.end() - static_cast<std::ptrdiff_t>(n), index.end(), 0.0) / n;
    }
    ok = ok && tail[0] > tail[1];
    d << "seed " << seed << ": " << fmt(tail[0]) << " vs " << fmt(tail[1]) << "; ";
  }
  return {ok, d.str() + "(need p_g=0.25 > p_g=0.75 in every seed)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"AC1", 60, ac1_oracle},       {"AC2", 120, ac2_tricritical}, {"AC3", 30, ac3_continuous},
      {"AC4", 60, ac4_first_order},  {"AC5", 0, ac5_monotone},      {"AC6", 0, ac6_exponent},
      {"AC7", 0, ac7_two_paths},     {"AC8", 0, ac8_regimes},       {"AC9", 300, ac9_phases},
      {"AC10", 300, ac10_abm},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true, any = false;
  for (const auto& c : criteria) {
    if (!only.empty() && c.id != only) continue;
    any = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " runtime over budget of " + fmt(c.budget_seconds) + " s";
    }
    std::printf("%-4s %s  %s  [%.1f s]\n", c.id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (!any) {
    std::fprintf(stderr, "unknown criterion %s\n", only.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
