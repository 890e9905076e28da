#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "incgeo/body.hpp"
#include "incgeo/measures.hpp"
#include "incgeo/projective.hpp"
#include "incgeo/rng.hpp"
#include "incgeo/tuples.hpp"

using namespace incgeo;
using testutil::cube;
using testutil::random_symmetric_polytope;
using testutil::square;
using testutil::unit_cube;
using testutil::unit_square;
using testutil::vec2;
using testutil::vec3;

TEST_CASE("degenerate mixed-volume limit factorizes") {
  DegenerateLimit two = degenerate_mixed_limit(unit_square(), {square(1.0)},
                                               vec2(1, 0), {0.1, 0.01, 0.001});
  CHECK(two.limit == doctest::Approx(1.0).epsilon(2e-5));
  CHECK(two.factorized == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(two.values.size() == 3);

  // The factorized value is a plain mixed area against the flat segment.
  Body seg = make_polytope({vec2(0, -1), vec2(0, 1)});
  CHECK(mixed_area(unit_square(), seg) == doctest::Approx(1.0).epsilon(1e-12));

  DegenerateLimit three = degenerate_mixed_limit(
      unit_cube(), {cube(1.0), cube(1.0)}, vec3(1, 0, 0), {0.1, 0.01, 0.001});
  CHECK(three.limit == doctest::Approx(4.0 / 3.0).epsilon(2e-5));
  CHECK(three.factorized == doctest::Approx(4.0 / 3.0).epsilon(1e-9));

  CHECK_ERRC(degenerate_mixed_limit(unit_square(), {square(1.0)}, vec2(1, 0),
                                    {0.1}),
             Errc::InvalidParams);
  CHECK_ERRC(degenerate_mixed_limit(unit_square(), {square(1.0)}, vec2(1, 0),
                                    {0.01, 0.1}),
             Errc::InvalidParams);
  CHECK_ERRC(degenerate_mixed_limit(unit_square(), {square(1.0), square(1.0)},
                                    vec2(1, 0), {0.1, 0.01}),
             Errc::ArityMismatch);
  CHECK_ERRC(degenerate_mixed_limit(unit_square(), {square(1.0)}, vec3(1, 0, 0),
                                    {0.1, 0.01}),
             Errc::InvalidParams);
}

TEST_CASE("linear-position driver confirms included pairs") {
  Body disk = polytopalize(make_ball(vec2(0, 0), 1.0), 64);
  SuiteReport equal = affine_identify_driver(square(1.0), square(1.0), {disk},
                                             12, 3);
  CHECK(equal.verdict == "CONSISTENT");
  for (const auto& row : equal.rows) {
    CHECK(row.verdict == "ok");
    CHECK(std::abs(row.margin) <= 1e-7 * std::max(1.0, std::abs(row.rhs)));
  }

  CounterRng rng(83);
  for (int trial = 0; trial < 5; ++trial) {
    Body B = random_symmetric_polytope(rng, 2, 7);
    Body A = scale_translate(B, 0.7, vec2(0, 0));
    SuiteReport rep = affine_identify_driver(A, B, {square(1.0)}, 20, 17);
    CHECK(rep.verdict == "CONSISTENT");
  }
}

TEST_CASE("linear-position driver separates on a width gap") {
  Body A = make_box(vec2(-2, -1), vec2(2, 1));
  Body B = square(1.5);
  SuiteReport rep = affine_identify_driver(A, B, {square(1.0)}, 10, 5);
  CHECK(rep.verdict == "VIOLATION");
  bool any = false;
  for (const auto& row : rep.rows) any = any || row.verdict == "violation";
  CHECK(any);

  Body T = make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  CHECK_ERRC(affine_identify_driver(T, B, {square(1.0)}, 4, 1),
             Errc::SymmetryRequired);
  CHECK_ERRC(affine_identify_driver(A, B, {square(1.0), square(1.0)}, 4, 1),
             Errc::ArityMismatch);
}

TEST_CASE("tuple separation on the scaled-square pair") {
  std::vector<Body> as{square(2.0), square(1.0)};
  std::vector<Body> bs{square(1.0), square(2.0)};
  TupleSeparation sep = tuple_separation_driver(as, bs);
  REQUIRE(sep.ts.size() == 2);
  CHECK(sep.ts[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sep.ts[1] == doctest::Approx(2.0).epsilon(1e-9));
  // The segment products match on both sides by multilinearity, so the
  // scaling conclusion must hold as well: 0.5 * (2Q) fits exactly in Q.
  CHECK(sep.inclusion_ok);
  CHECK(sep.products_ok);
  CHECK(std::abs(sep.worst_product_margin) <= 1e-9);
}

TEST_CASE("tuple separation identities and invariants") {
  std::vector<Body> same{square(1.0), square(1.0)};
  TupleSeparation id = tuple_separation_driver(same, same);
  CHECK(id.ts[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(id.ts[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(id.inclusion_ok);
  CHECK(id.products_ok);

  CounterRng rng(89);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Body> as, bs;
    for (int i = 0; i < 2; ++i) {
      Body B = random_symmetric_polytope(rng, 2, 6);
      as.push_back(scale_translate(B, rng.uniform(0.3, 1.0), vec2(0, 0)));
      bs.push_back(B);
    }
    TupleSeparation sep = tuple_separation_driver(as, bs);
    CHECK(sep.inclusion_ok);
    CHECK(sep.products_ok);
    double prod = 1.0;
    for (std::size_t i = 1; i < sep.ts.size(); ++i) {
      prod *= sep.ts[i];
      CHECK(subset_of(scale_translate(as[i], sep.ts[i], vec2(0, 0)), bs[i], 1e-7));
    }
    CHECK(prod >= 1.0 - 1e-9);
  }

  Body T = make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  CHECK_ERRC(tuple_separation_driver({T, square(1.0)}, {square(1.0), square(1.0)}),
             Errc::SymmetryRequired);
  CHECK_ERRC(tuple_separation_driver({square(1.0)}, {square(1.0), square(1.0)}),
             Errc::ArityMismatch);
  CHECK_ERRC(tuple_separation_driver({square(1.0)}, {square(1.0)}),
             Errc::InvalidParams);
}

TEST_CASE("constant-width counterexample suite") {
  SuiteReport rep = remark_counterexample_suite(32, 9);
  CHECK(rep.verdict == "VIOLATION");
  REQUIRE(rep.rows.size() == 33);
  CHECK(rep.rows[0].params == "identity");
  CHECK(std::abs(rep.rows[0].margin) <= 1e-3);
  for (const auto& row : rep.rows) CHECK(row.verdict == "ok");
}

TEST_CASE("projective tuple witness finds a reversal on the slab pair") {
  Body k1 = make_box(vec2(-1.5, -0.5), vec2(1.5, 0.5));
  Body l1 = square(1.0);
  std::vector<Body> kis{square(1.0)}, lis{square(1.0)};
  ProjectiveTupleReport rep = projective_tuple_witness(k1, l1, kis, lis, {});

  REQUIRE(rep.reversal_delta.has_value());
  CHECK(*rep.reversal_delta > 0.0);
  CHECK(*rep.reversal_delta <= 0.25);
  CHECK(rep.suite.verdict == "VIOLATION");
  REQUIRE(!rep.suite.rows.empty());
  const SuiteRow& last = rep.suite.rows.back();
  CHECK(last.verdict == "reversed");
  CHECK(last.lhs > last.rhs + 1e-9 * std::max(1.0, std::abs(last.rhs)));
  CHECK(last.margin == doctest::Approx(last.lhs - last.rhs).epsilon(1e-12));
  CHECK(last.params.find("closing_lhs=") != std::string::npos);
  CHECK(last.params.find("closing_holds=") != std::string::npos);

  REQUIRE(rep.lambdas.size() == 1);
  CHECK(rep.lambdas[0] == doctest::Approx(1.125).epsilon(1e-9));
  CHECK(rep.eps0 == doctest::Approx(1.11375).epsilon(1e-9));
  CHECK(rep.eps1 == doctest::Approx(8.0 * 1.11375).epsilon(1e-9));
  CHECK(rep.big_r > 0.0);
  CHECK(rep.d_outer > 2.0);
  CHECK(rep.d_inner > 2.0);
}

TEST_CASE("projective tuple witness in three dimensions") {
  Body k1 = make_box(vec3(-1.5, -0.5, -0.5), vec3(1.5, 0.5, 0.5));
  Body l1 = cube(1.0);
  std::vector<Body> kis{cube(1.0), cube(1.0)}, lis{cube(1.0), cube(1.0)};
  ProjectiveTupleReport rep = projective_tuple_witness(k1, l1, kis, lis, {});
  REQUIRE(rep.reversal_delta.has_value());
  CHECK(rep.suite.rows.back().verdict == "reversed");
  CHECK(rep.d_outer > 2.0);
  CHECK(rep.d_inner > 2.0);
}

TEST_CASE("projective tuple witness fails honestly") {
  // Vertex-only violation: every facet plane of the diamond stays below the
  // support of the square, so no tangent configuration can clear it.
  double s = std::sqrt(2.0) / 2.0;
  Body diamond = make_polytope(
      {vec2(0.6 + s, 0), vec2(0.6 - s, 0), vec2(0.6, s), vec2(0.6, -s)});
  Body l1 = square(1.0);
  std::vector<Body> kis{square(1.0)}, lis{square(1.0)};
  CHECK_ERRC(projective_tuple_witness(diamond, l1, kis, lis, {}),
             Errc::WitnessSearchFailed);

  // Included pair: no facet clears at all.
  CHECK_ERRC(projective_tuple_witness(square(0.5), l1, kis, lis, {}),
             Errc::WitnessSearchFailed);
}

TEST_CASE("projective tuple witness validates inputs") {
  Body k1 = make_box(vec2(-1.5, -0.5), vec2(1.5, 0.5));
  Body l1 = square(1.0);
  std::vector<Body> kis{square(1.0)}, lis{square(1.0)};
  CHECK_ERRC(projective_tuple_witness(make_ball(vec2(0, 0), 1.0), l1, kis, lis, {}),
             Errc::UnsupportedOperandPair);
  CHECK_ERRC(projective_tuple_witness(k1, l1, {}, {}, {}), Errc::ArityMismatch);
  CHECK_ERRC(projective_tuple_witness(k1, l1, kis, lis, {0.5, -0.1}),
             Errc::InvalidParams);
  Body off = make_box(vec2(2, 2), vec2(3, 3));
  CHECK_ERRC(projective_tuple_witness(off, l1, kis, lis, {}),
             Errc::OriginNotInterior);
}

TEST_CASE("no reversal for nested tuples under admissible maps") {
  CounterRng rng(97);
  Body K1 = square(0.5), L1 = square(1.0);
  Body K2 = make_polytope({vec2(0.4, 0), vec2(-0.4, 0), vec2(0, 0.4), vec2(0, -0.4)});
  Body L2 = square(0.6);
  REQUIRE(subset_of(K2, L2));
  const double lams[3] = {0.5, 1.0, 2.0};
  int done = 0;
  while (done < 500) {
    Eigen::MatrixXd M(2, 2);
    Eigen::VectorXd b(2);
    for (int i = 0; i < 2; ++i) {
      b[i] = rng.uniform(-1.0, 1.0);
      for (int j = 0; j < 2; ++j) M(i, j) = rng.uniform(-1.0, 1.0);
    }
    if (std::abs(M.determinant()) < 0.2) continue;
    FLMap F = flmap_from_affine(M, b);
    if (done % 3 == 2) {
      // Shift the tuple far to the right of the defining hyperplane first.
      FLMap shift = flmap_from_affine(Eigen::MatrixXd::Identity(2, 2),
                                      vec2(rng.uniform(4.0, 7.0), 0.0));
      F = compose(F, compose(canonical_f0(2, +1), shift));
      if (!admissible(compose(canonical_f0(2, +1), shift), square(2.0)))
        continue;
    }
    double l1s = lams[done % 3], l2s = lams[(done / 3) % 3];
    Body fk1 = apply_body(F, scale_translate(K1, l1s, vec2(0, 0)));
    Body fk2 = apply_body(F, scale_translate(K2, l2s, vec2(0, 0)));
    Body fl1 = apply_body(F, scale_translate(L1, l1s, vec2(0, 0)));
    Body fl2 = apply_body(F, scale_translate(L2, l2s, vec2(0, 0)));
    double lhs = mixed_volume({fk1, fk2});
    double rhs = mixed_volume({fl1, fl2});
    CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
    ++done;
  }
}

TEST_CASE("closing inequality oracles") {
  ClosingInequality low = closing_inequality(0.1, 1.0, 3.0, 0.1, 3.0, 2);
  CHECK(low.lhs == doctest::Approx(0.1 / (0.21 * 9.6)).epsilon(1e-12));
  CHECK(low.rhs == doctest::Approx(1.0 / 45.0).epsilon(1e-12));
  CHECK_FALSE(low.holds);

  ClosingInequality high = closing_inequality(1.0, 1.0, 3.0, 0.1, 3.0, 2);
  CHECK(high.lhs == doctest::Approx((0.1 / 9.6) / 3.0).epsilon(1e-12));
  CHECK(high.holds);

  // lhs is strictly decreasing in delta.
  double prev = closing_inequality(0.05, 1.0, 3.0, 0.1, 3.0, 2).lhs;
  for (double d : {0.1, 0.2, 0.5, 1.0, 2.0}) {
    double cur = closing_inequality(d, 1.0, 3.0, 0.1, 3.0, 2).lhs;
    CHECK(cur < prev);
    prev = cur;
  }

  CHECK_ERRC(closing_inequality(0.1, 1.0, 2.0, 0.1, 3.0, 2), Errc::InvalidParams);
  CHECK_ERRC(closing_inequality(0.1, 1.0, 3.0, 0.1, 1.5, 2), Errc::InvalidParams);
  CHECK_ERRC(closing_inequality(0.0, 1.0, 3.0, 0.1, 3.0, 2), Errc::InvalidParams);
  CHECK_ERRC(closing_inequality(0.1, -1.0, 3.0, 0.1, 3.0, 2), Errc::InvalidParams);
  CHECK_ERRC(closing_inequality(0.1, 1.0, 3.0, 0.1, 3.0, 0), Errc::InvalidParams);
}

TEST_CASE("closing inequality flips at the bisected threshold") {
  auto holds = [](double delta) {
    return closing_inequality(delta, 1.0, 3.0, 0.1, 3.0, 2).holds;
  };
  REQUIRE_FALSE(holds(0.1));
  REQUIRE(holds(1.0));
  double lo = 0.1, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  double star = 0.5 * (lo + hi);
  CHECK(star > 0.2);
  CHECK(star < 0.25);
  // At the flip, 1/(delta(delta+2)) equals rhs/(eps1 factor): the threshold
  // solves delta^2 + 2 delta = 0.46875.
  CHECK(star * star + 2.0 * star == doctest::Approx(0.46875).epsilon(1e-9));
}
