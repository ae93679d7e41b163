#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <limits>

#include "gi/bounds.hpp"
#include "gi/errors.hpp"
#include "gi/rng.hpp"
#include "oracles/bounds_oracle.hpp"

using namespace gi;
using namespace gi::bounds;

TEST_CASE("epsilon0 solves e + e^2/2 = 1/2") {
  const double e = epsilon0();
  CHECK(e + e * e / 2 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(e - (std::sqrt(2.0) - 1.0)) < 1e-15);
}

TEST_CASE("closed-form bounds at J = K = lambda = 1, alpha = 0") {
  const IncoherentBounds b = incoherent_bond_bounds({1, 1, 0, 1});
  CHECK(b.bound_pm == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(b.bound_00 == doctest::Approx(std::exp(-25.0 / 8)).epsilon(1e-15));
  CHECK(b.bound_p0 == doctest::Approx(std::exp(-(2 + 1 + 1.0 / 16))).epsilon(1e-15));
  CHECK(b.epsilon == doctest::Approx(b.bound_00 + 2 * b.bound_pm + 4 * b.bound_p0).epsilon(1e-15));
}

TEST_CASE("constrained partition functions against chessboard quadrature") {
  Rng rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const CouplingParams p{2 * rng.uniform(), 2 * rng.uniform(), 4 * rng.uniform() - 2, 0.3 + 2 * rng.uniform()};
    CHECK(constrained_logz_per_site(BondPattern::vacant_vacant, p) ==
          doctest::Approx(oracle::chessboard_logz_per_site(0, 0, p.J, p.K, p.alpha, p.lambda)).epsilon(1e-10));
    CHECK(constrained_logz_per_site(BondPattern::coherent, p) ==
          doctest::Approx(oracle::chessboard_logz_per_site(1, 1, p.J, p.K, p.alpha, p.lambda)).epsilon(1e-10));
    CHECK(constrained_logz_per_site(BondPattern::opposed, p) ==
          doctest::Approx(oracle::chessboard_logz_per_site(1, -1, p.J, p.K, p.alpha, p.lambda)).epsilon(1e-10));
    // The colour-vacancy pattern uses e^{alpha/2} sqrt(pi/lambda) e^{K^2/(8 lambda)}, which leaves
    // out the 4J field that the vacant sublattice sees from its red
    // neighbours: the brute-force value is larger by exactly 2 J^2 / lambda.
    const double brute = oracle::chessboard_logz_per_site(1, 0, p.J, p.K, p.alpha, p.lambda);
    CHECK(constrained_logz_per_site(BondPattern::mixed_void, p) + 2 * p.J * p.J / p.lambda ==
          doctest::Approx(brute).epsilon(1e-10));
  }
}

TEST_CASE("incoherent bounds are square roots of partition-function ratios") {
  Rng rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const CouplingParams p{3 * rng.uniform(), 3 * rng.uniform(), 6 * rng.uniform() - 3, 0.2 + 3 * rng.uniform()};
    const IncoherentBounds b = incoherent_bond_bounds(p);
    const double pp = constrained_logz_per_site(BondPattern::coherent, p);
    const auto ratio = [&](BondPattern q) { return std::exp(0.5 * (constrained_logz_per_site(q, p) - pp)); };
    CHECK(b.bound_00 == doctest::Approx(ratio(BondPattern::vacant_vacant)).epsilon(1e-12));
    CHECK(b.bound_pm == doctest::Approx(ratio(BondPattern::opposed)).epsilon(1e-12));
    CHECK(b.bound_p0 == doctest::Approx(ratio(BondPattern::mixed_void)).epsilon(1e-12));
  }
}

TEST_CASE("Peierls series") {
  CHECK(peierls_bound(0.0) == 0.0);
  CHECK(std::isinf(peierls_bound(1.0 / 2.638)));
  CHECK(std::isinf(peierls_bound(0.5)));
  CHECK_THROWS_AS(peierls_bound(-0.1), DomainError);
  for (double eps : {1e-4, 0.01, 0.1, 0.2, 0.3, 0.37, 0.379}) {
    CAPTURE(eps);
    CHECK(peierls_bound(eps) == doctest::Approx(oracle::peierls_series(eps, kConnectiveConstant)).epsilon(1e-12));
    if (eps * kConnectiveConstantSafe < 1.0)
      CHECK(peierls_bound(eps, kConnectiveConstantSafe) ==
            doctest::Approx(oracle::peierls_series(eps, kConnectiveConstantSafe)).epsilon(1e-12));
    else
      CHECK(std::isinf(peierls_bound(eps, kConnectiveConstantSafe)));
  }
  // monotone in epsilon
  double last = 0.0;
  for (double eps = 0.01; eps < 0.37; eps += 0.01) {
    const double v = peierls_bound(eps);
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("edge-occupation bound against plain quadrature") {
  const std::array<std::array<double, 3>, 7> points = {{{0.01, 0.01, 1.0}, {0.1, 0.5, 1.0}, {1.0, 1.0, 1.0},
                                                        {0.3, 0.0, 2.0}, {2.0, 3.0, 0.5}, {0.05, 2.0, 4.0},
                                                        {5.0, 5.0, 1.0}}};
  for (const auto& [J, K, lambda] : points) {
    CAPTURE(J);
    CAPTURE(K);
    CAPTURE(lambda);
    CHECK(piy_epsilon(J, K, lambda) == doctest::Approx(oracle::piy_epsilon(J, K, lambda)).epsilon(1e-7));
  }
  CHECK(piy_epsilon(0.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(piy_epsilon(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(piy_epsilon(-1.0, 1.0, 1.0), DomainError);
  // small J: sinh(Jq) ~ Jq, so the bound becomes linear in J
  CHECK(piy_epsilon(1e-4, 0.7, 1.0) / 1e-4 == doctest::Approx(piy_epsilon(1e-5, 0.7, 1.0) / 1e-5).epsilon(1e-6));
}

TEST_CASE("sparse bound") {
  const CouplingParams q{0.1, 0.1, -8.0, 1.0};
  const SparseReport r = sparse_report(q);
  CHECK(r.delta_alpha == doctest::Approx(oracle::min_delta_alpha(q.J, q.K, q.lambda, q.alpha)).epsilon(1e-9));
  CHECK(r.delta_alpha <= oracle::min_delta_alpha(q.J, q.K, q.lambda, q.alpha) + 1e-15);
  CHECK(r.gamma >= (4 * q.J + q.K) / (2 * q.lambda));
  const SparseReport fixed = sparse_report(q, 2.0);
  CHECK(fixed.delta_alpha == doctest::Approx(oracle::delta_alpha(q.J, q.K, q.lambda, q.alpha, 2.0)).epsilon(1e-14));
  CHECK(fixed.delta_gamma == doctest::Approx(0.5 * std::exp(-std::pow(2.0 - 0.25, 2))).epsilon(1e-14));
  CHECK_THROWS_AS(sparse_report(q, 0.1), DomainError);
  CHECK(r.pc_diamond_lower == doctest::Approx(1.0 / 12));
}

TEST_CASE("minimum of delta_alpha over gamma matches a dense scan") {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const CouplingParams p{rng.uniform(), rng.uniform(), -40 * rng.uniform(), 0.3 + 2 * rng.uniform()};
    const double ref = oracle::min_delta_alpha(p.J, p.K, p.lambda, p.alpha);
    const double got = sparse_report(p).delta_alpha;
    CHECK(got <= ref + 1e-12);
    CHECK(got == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("regime classification") {
  CHECK(classify_regime({5, 5, 0, 1}) == Regime::proven_ordered);
  CHECK(classify_regime({0.01, 0.01, 0, 1}) == Regime::proven_unique_hightemp);
  // The sparse certificate needs delta_alpha < 1/12, but for J = K = lambda = 1
  // the occupation term alone is at least e^{2.5+alpha}/(1+e^{2.5+alpha}+...)
  // at every admissible gamma; alpha = -10 is far from enough.
  const BoundReport weak = bound_report({1, 1, -10, 1});
  CHECK(weak.classification == Regime::unresolved);
  CHECK(weak.sparse.delta_alpha > 0.9);
  CHECK(classify_regime({1, 1, -40, 1}) == Regime::proven_unique_sparse);
  CHECK(oracle::min_delta_alpha(1, 1, 1, -40) < 1.0 / 12);

  const BoundReport r = bound_report({5, 5, 0, 1});
  CHECK(r.lambda2 == 2.638);
  CHECK(r.peierls_total <= r.peierls_safe);
  CHECK(r.epsilon0 == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(r.logz_pp > r.logz_pm);
  CHECK(std::string(to_string(Regime::proven_unique_sparse)) == "proven_unique_sparse");
}
