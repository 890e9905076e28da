#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "incgeo/body.hpp"
#include "incgeo/measures.hpp"
#include "incgeo/rng.hpp"

using namespace incgeo;
using testutil::cube;
using testutil::random_polytope;
using testutil::random_symmetric_polytope;
using testutil::square;
using testutil::unit_cube;
using testutil::unit_square;
using testutil::vec2;
using testutil::vec3;

namespace {

Body rotated_segment(const Eigen::MatrixXd& rot, const Eigen::VectorXd& d) {
  Eigen::VectorXd h = rot * d;
  return make_polytope({-0.5 * h, 0.5 * h});
}

}  // namespace

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK_ERRC(unit_ball_volume(1), Errc::DimensionUnsupported);
  CHECK_ERRC(unit_ball_volume(4), Errc::DimensionUnsupported);
}

TEST_CASE("volumes of frozen bodies") {
  CHECK(volume(unit_square()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(volume(square(1.0)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(volume(make_ball(vec2(0, 0), 1.0)) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(volume(unit_cube()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(volume(make_ball(vec3(0, 0, 0), 1.0)) ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
  Body tetra = make_polytope({vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0),
                              vec3(0, 0, 1)});
  CHECK(volume(tetra) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  Eigen::MatrixXd shape(2, 2);
  shape << 2.0, 0.0, 0.0, 3.0;
  CHECK(volume(make_ellipsoid(vec2(0, 0), shape)) ==
        doctest::Approx(6.0 * M_PI).epsilon(1e-12));
  CHECK(volume(make_polytope({vec2(0, 0), vec2(1, 0)})) == 0.0);
}

TEST_CASE("intrinsic measure tracks the affine hull") {
  CHECK(intrinsic_measure(make_polytope({vec2(0.3, 0.4)})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(intrinsic_measure(make_polytope({vec2(0, 0), vec2(3, 4)})) ==
        doctest::Approx(5.0).epsilon(1e-12));
  Body flat3 = make_polytope({vec3(0, 0, 1), vec3(2, 0, 1), vec3(0, 2, 1),
                              vec3(2, 2, 1)});
  CHECK(intrinsic_measure(flat3) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(intrinsic_measure(unit_cube()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("surface areas of frozen bodies") {
  CHECK(surface_area(unit_square()) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(surface_area(square(1.0)) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(surface_area(make_ball(vec2(0, 0), 1.0)) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(surface_area(unit_cube()) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(surface_area(make_ball(vec3(0, 0, 0), 1.0)) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  Body T = make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  CHECK(surface_area(T) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("mixed volume diagonal and segment oracles") {
  CHECK(mixed_volume({unit_square(), unit_square()}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mixed_volume({unit_cube(), unit_cube(), unit_cube()}) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Body s1 = make_polytope({vec2(0, 0), vec2(2, 0)});
  Body s2 = make_polytope({vec2(0, 0), vec2(0, 3)});
  CHECK(mixed_volume({s1, s2}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(volume(minkowski_sum(s1, s2)) == doctest::Approx(6.0).epsilon(1e-12));

  Body t1 = make_polytope({vec3(0, 0, 0), vec3(2, 0, 0)});
  Body t2 = make_polytope({vec3(0, 0, 0), vec3(0, 3, 0)});
  Body t3 = make_polytope({vec3(0, 0, 0), vec3(0, 0, 4)});
  CHECK(mixed_volume({t1, t2, t3}) == doctest::Approx(4.0).epsilon(1e-8));

  CHECK_ERRC(mixed_volume({unit_square()}), Errc::ArityMismatch);
  CHECK_ERRC(mixed_volume({unit_square(), unit_cube()}), Errc::ArityMismatch);
  CHECK_ERRC(mixed_volume({unit_square(), make_ball(vec2(0, 0), 1.0)}),
             Errc::UnsupportedOperandPair);
  CHECK_ERRC(mixed_volume({}), Errc::ArityMismatch);
}

TEST_CASE("mixed volume of rotated orthogonal segments factorizes") {
  CounterRng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    double ang = rng.uniform(0.0, 2.0 * M_PI);
    Eigen::MatrixXd rot(2, 2);
    rot << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
    double a = rng.uniform(0.5, 3.0), b = rng.uniform(0.5, 3.0);
    Body sa = rotated_segment(rot, vec2(a, 0));
    Body sb = rotated_segment(rot, vec2(0, b));
    CHECK(mixed_volume({sa, sb}) == doctest::Approx(a * b / 2.0).epsilon(1e-8));
  }
}

TEST_CASE("mixed volume symmetry, multilinearity, monotonicity") {
  CounterRng rng(23);
  for (int dim = 2; dim <= 3; ++dim) {
    for (int trial = 0; trial < 12; ++trial) {
      Body A = random_polytope(rng, dim, 8);
      Body B = random_polytope(rng, dim, 8);
      Body C = random_polytope(rng, dim, 8);

      std::vector<Body> tup{A, B};
      std::vector<Body> swapped{B, A};
      if (dim == 3) {
        tup.push_back(C);
        swapped.push_back(C);
        std::swap(swapped[0], swapped[2]);  // (C, A, B)
      }
      double v = mixed_volume(tup);
      CHECK(mixed_volume(swapped) == doctest::Approx(v).epsilon(1e-10));

      // Diagonal.
      std::vector<Body> diag(std::size_t(dim), A);
      CHECK(mixed_volume(diag) == doctest::Approx(volume(A)).epsilon(1e-10));

      // Linearity in the first slot.
      double lam = rng.uniform(0.3, 2.0);
      Body AB = minkowski_sum(A, scale_translate(B, lam, Eigen::VectorXd::Zero(dim)));
      std::vector<Body> lhs_tup = tup, a_tup = tup, b_tup = tup;
      lhs_tup[0] = AB;
      a_tup[0] = A;
      b_tup[0] = B;
      CHECK(mixed_volume(lhs_tup) ==
            doctest::Approx(mixed_volume(a_tup) + lam * mixed_volume(b_tup))
                .epsilon(1e-8));

      // Monotonicity in each argument.
      Body A_small = scale_translate(A, 0.5, Eigen::VectorXd::Zero(dim));
      std::vector<Body> small_tup = tup;
      small_tup[0] = A_small;
      CHECK(mixed_volume(small_tup) <= v + 1e-10);
    }
  }
}

TEST_CASE("planar mixed area shortcut agrees with the general evaluator") {
  Body seg = make_polytope({vec2(0, 0), vec2(0, 1)});
  CHECK(mixed_area(unit_square(), seg) == doctest::Approx(0.5).epsilon(1e-12));

  CounterRng rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    Body A = random_polytope(rng, 2, 9);
    Body B = random_polytope(rng, 2, 9);
    double shortcut = mixed_area(A, B);
    CHECK(mixed_volume({A, B}) == doctest::Approx(shortcut).epsilon(1e-12));
    double poly = (volume(minkowski_sum(A, B)) - volume(A) - volume(B)) / 2.0;
    CHECK(shortcut == doctest::Approx(poly).epsilon(1e-12));
  }
  CHECK_ERRC(mixed_area(unit_cube(), unit_cube()), Errc::DimensionUnsupported);
}

TEST_CASE("quermassintegrals of frozen bodies") {
  std::vector<double> sq = quermassintegrals(unit_square());
  REQUIRE(sq.size() == 3);
  CHECK(sq[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sq[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sq[2] == doctest::Approx(M_PI).epsilon(1e-9));

  std::vector<double> cu = quermassintegrals(unit_cube());
  REQUIRE(cu.size() == 4);
  CHECK(cu[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cu[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(cu[2] == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(cu[3] == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-9));

  std::vector<double> b2 = quermassintegrals(make_ball(vec2(0, 0), 1.0));
  CHECK(b2[0] == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(b2[1] == doctest::Approx(M_PI).epsilon(1e-9));

  std::vector<double> b3 = quermassintegrals(make_ball(vec3(0, 0, 0), 1.0));
  for (double w : b3) CHECK(w == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-9));

  std::vector<double> disk = quermassintegrals(
      polytopalize(make_ball(vec2(0, 0), 1.0), 3600));
  CHECK(disk[1] == doctest::Approx(M_PI).epsilon(1e-3));
}

TEST_CASE("steiner volumes match the quermassintegral expansion") {
  CHECK(steiner_volume(unit_square(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(steiner_volume(unit_square(), 1.0) ==
        doctest::Approx(5.0 + M_PI).epsilon(1e-9));
  CHECK(steiner_volume(unit_cube(), 1.0) ==
        doctest::Approx(1.0 + 6.0 + 3.0 * M_PI + 4.0 * M_PI / 3.0).epsilon(1e-9));
  CHECK_ERRC(steiner_volume(unit_square(), -0.5), Errc::InvalidParams);

  CounterRng rng(37);
  for (int dim = 2; dim <= 3; ++dim) {
    Body K = random_polytope(rng, dim, 10);
    std::vector<double> w = quermassintegrals(K);
    for (double t : {0.25, 1.0, 2.5}) {
      double expansion = 0.0, binom = 1.0, tp = 1.0;
      for (int i = 0; i <= dim; ++i) {
        expansion += binom * w[std::size_t(i)] * tp;
        binom *= double(dim - i) / double(i + 1);
        tp *= t;
      }
      CHECK(steiner_volume(K, t) == doctest::Approx(expansion).epsilon(1e-9));
    }
  }
}

TEST_CASE("volume derivative recovers the mixed volume") {
  Body K2 = square(1.0);
  Body A2 = make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  double v2 = mixed_volume({A2, K2});
  for (double eps : {0.2, 0.1, 0.05}) {
    Body sum = minkowski_sum(K2, scale_translate(A2, eps, vec2(0, 0)));
    double diff = (volume(sum) - volume(K2)) / eps;
    CHECK(diff - 2.0 * v2 == doctest::Approx(eps * volume(A2)).epsilon(1e-9));
  }

  Body K3 = cube(1.0);
  Body A3 = make_polytope({vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0),
                           vec3(0, 0, 1)});
  double v3 = mixed_volume({A3, K3, K3});
  double vaa = mixed_volume({A3, A3, K3});
  for (double eps : {0.2, 0.1}) {
    Body sum = minkowski_sum(K3, scale_translate(A3, eps, vec3(0, 0, 0)));
    double diff = (volume(sum) - volume(K3)) / eps;
    CHECK(diff - 3.0 * v3 ==
          doctest::Approx(3.0 * eps * vaa + eps * eps * volume(A3)).epsilon(1e-8));
  }
}

TEST_CASE("monte carlo volume estimates") {
  Body T = make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  McEstimate est = mc_volume(T, 200000, 42);
  CHECK(est.samples == 200000);
  CHECK(est.stderr_est > 0.0);
  CHECK(std::abs(est.value - 0.5) <= 5.0 * est.stderr_est);

  McEstimate disk = mc_volume(make_ball(vec2(0, 0), 1.0), 200000, 5);
  CHECK(std::abs(disk.value - M_PI) <= 5.0 * disk.stderr_est);

  McEstimate again = mc_volume(T, 200000, 42);
  CHECK(again.value == est.value);
  CHECK(CounterRng(42).uniform() == CounterRng(42).uniform());
  CHECK(CounterRng(42).uniform() != CounterRng(43).uniform());
  CHECK(CounterRng(42).split(1).uniform() != CounterRng(42).split(2).uniform());

  CHECK_ERRC(mc_volume(T, 0, 1), Errc::InvalidParams);
}

TEST_CASE("monte carlo outer parallel volume matches steiner") {
  McEstimate est = mc_outer_volume(unit_square(), 1.0, 200000, 7);
  CHECK(std::abs(est.value - (5.0 + M_PI)) <= 5.0 * est.stderr_est);
  McEstimate cube_est = mc_outer_volume(unit_cube(), 0.5, 200000, 8);
  CHECK(std::abs(cube_est.value - steiner_volume(unit_cube(), 0.5)) <=
        5.0 * cube_est.stderr_est);
  CHECK_ERRC(mc_outer_volume(unit_square(), -1.0, 10, 1), Errc::InvalidParams);
}
