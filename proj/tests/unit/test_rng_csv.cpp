#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "gi/csv.hpp"
#include "gi/errors.hpp"
#include "gi/lattice.hpp"
#include "gi/rng.hpp"
#include "gi/snapshot.hpp"

using namespace gi;

TEST_CASE("streams are reproducible and split streams differ") {
  Rng a(42), b(42), c(43);
  for (int k = 0; k < 100; ++k) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  const Rng parent(9);
  Rng s0 = parent.split(0), s0b = parent.split(0), s1 = parent.split(1);
  int same = 0;
  for (int k = 0; k < 100; ++k) {
    const auto x = s0();
    CHECK(x == s0b());
    same += x == s1();
  }
  CHECK(same == 0);
}

TEST_CASE("uniforms lie in [0,1) with the right mean") {
  Rng r(1);
  double sum = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("reals print with twelve significant digits") {
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(std::exp(-2.0)) == "0.135335283237");
  CHECK(format_real(1e-20) == "1e-20");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
}

TEST_CASE("csv writer") {
  std::ostringstream s;
  CsvWriter w(s);
  w.header({"a", "b", "c"});
  w.row(1, 0.5, "x");
  w.row(std::int64_t{-3}, 1.0 / 7.0, std::string("yy"));
  CHECK(s.str() == "a,b,c\n1,0.5,x\n-3,0.142857142857,yy\n");
}

TEST_CASE("snapshot files") {
  const Lattice lat = Lattice::torus(3);
  SpinConfig c = SpinConfig::zeros(9);
  c.eta = {1, -1, 0, 0, 1, 1, -1, -1, 0};
  c.g = {0.5, -1, 0, 0, 0, 0, 0, 0, 2};
  const CouplingParams p{1, 0.5, -0.25, 2};
  std::ostringstream eta, g;
  write_eta_grid(eta, c, lat, p, 17);
  CHECK(eta.str() == "# L=3 J=1 K=0.5 alpha=-0.25 lambda=2 seed=17\n+-0\n0++\n--0\n");
  write_graffiti_csv(g, c, lat, p, 17);
  CHECK(g.str() == "# L=3 J=1 K=0.5 alpha=-0.25 lambda=2 seed=17\n0.5,-1,0\n0,0,0\n0,0,2\n");
  const Lattice path = Lattice::from_edges(2, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(write_eta_grid(eta, SpinConfig::zeros(2), path, p, 1), ConfigError);
}
