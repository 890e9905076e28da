#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "incgeo/body.hpp"
#include "incgeo/directions.hpp"
#include "incgeo/measures.hpp"
#include "incgeo/rng.hpp"

using namespace incgeo;
using testutil::cube;
using testutil::random_polytope;
using testutil::random_symmetric_polytope;
using testutil::random_unit;
using testutil::square;
using testutil::unit_cube;
using testutil::unit_square;
using testutil::vec2;
using testutil::vec3;

TEST_CASE("constructors reject bad input") {
  CHECK_ERRC(make_polytope({}), Errc::InvalidParams);
  Eigen::VectorXd p4 = Eigen::VectorXd::Zero(4);
  CHECK_ERRC(make_polytope({p4}), Errc::DimensionUnsupported);
  CHECK_ERRC(make_ball(vec2(0, 0), 0.0), Errc::InvalidParams);
  CHECK_ERRC(make_ball(vec2(0, 0), -1.0), Errc::InvalidParams);
  CHECK_ERRC(make_box(vec2(0, 0), vec2(0, 1)), Errc::InvalidParams);
  CHECK_ERRC(make_ellipsoid(vec2(0, 0), Eigen::MatrixXd::Zero(2, 2)),
             Errc::InvalidParams);
  CHECK_ERRC(make_reuleaux(0.0), Errc::InvalidParams);
  CHECK_ERRC(make_reuleaux(2.0, 100), Errc::InvalidParams);
  CHECK_ERRC(polytopalize(unit_square(), 16), Errc::InvalidParams);
  CHECK_ERRC(polytopalize(make_ball(vec2(0, 0), 1.0), 2), Errc::InvalidParams);
}

TEST_CASE("support function on frozen bodies") {
  Body sq = square(1.0);
  CHECK(support(sq, vec2(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(support(sq, vec2(2, 0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(support(sq, vec2(1, 1)) == doctest::Approx(2.0).epsilon(1e-12));

  Body ball = make_ball(vec2(0, 0), 1.0);
  for (const auto& u : direction_grid(2, 32))
    CHECK(support(ball, u) == doctest::Approx(1.0).epsilon(1e-12));

  // Ellipsoid with semiaxes (1, 1) centered at -e1: boundary touches 0.
  Body e = make_ellipsoid(vec2(-1, 0), Eigen::MatrixXd::Identity(2, 2));
  CHECK(support(e, vec2(1, 0)) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_ERRC(support(sq, vec2(0, 0)), Errc::InvalidDirection);
}

TEST_CASE("support function is sublinear") {
  CounterRng rng(11);
  for (int dim = 2; dim <= 3; ++dim) {
    Body K = random_polytope(rng, dim, 12);
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXd u = random_unit(rng, dim);
      Eigen::VectorXd v = random_unit(rng, dim);
      CHECK(support(K, u + v) <= support(K, u) + support(K, v) + 1e-9);
      CHECK(support(K, 2.0 * u) ==
            doctest::Approx(2.0 * support(K, u)).epsilon(1e-12));
    }
  }
}

TEST_CASE("width on frozen bodies") {
  CHECK(width(make_ball(vec2(0, 0), 1.0), vec2(0.3, -0.8)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(width(unit_square(), vec2(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(width(unit_square(), vec2(5, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_ERRC(width(unit_square(), vec2(0, 0)), Errc::InvalidDirection);
}

TEST_CASE("reuleaux triangle has the pinned width on arc-normal directions") {
  Body R = make_reuleaux(2.0);
  const auto& verts = vertices(R);
  REQUIRE(verts.size() >= 360);
  for (std::size_t i = 0; i < verts.size(); i += 31) {
    const Eigen::VectorXd& p = verts[i];
    double best = 0.0;
    Eigen::VectorXd far = p;
    for (const auto& q : verts) {
      double d = (p - q).norm();
      if (d > best) {
        best = d;
        far = q;
      }
    }
    REQUIRE(best == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(width(R, p - far) == doctest::Approx(2.0).epsilon(1e-9));
  }
  // The polygon is inscribed, so no direction is wider than the true width.
  for (const auto& u : direction_grid(2, 360)) {
    double w = width(R, u);
    CHECK(w <= 2.0 + 1e-9);
    CHECK(w >= 2.0 - 1e-3);
  }
}

TEST_CASE("minkowski sums of boxes and segments") {
  Body s1 = minkowski_sum(unit_square(), unit_square());
  Body box02 = make_box(vec2(0, 0), vec2(2, 2));
  CHECK(hausdorff_distance(s1, box02) <= 1e-12);

  Body seg = make_polytope({vec2(0, 0), vec2(0, 1)});
  Body s2 = minkowski_sum(unit_square(), seg);
  CHECK(hausdorff_distance(s2, make_box(vec2(0, 0), vec2(1, 2))) <= 1e-12);

  CHECK_ERRC(minkowski_sum(unit_square(), make_ball(vec2(0, 0), 1.0)),
             Errc::UnsupportedOperandPair);
  CHECK_ERRC(minkowski_sum(unit_square(), unit_cube()), Errc::ArityMismatch);
}

TEST_CASE("difference body of a triangle is the pinned hexagon") {
  Body T = make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)});
  Body D = difference_body(T);
  CHECK(vertices(D).size() == 6);
  CHECK(volume(D) == doctest::Approx(3.0).epsilon(1e-12));
  Body oracle = make_polytope({vec2(1, 0), vec2(1, -1), vec2(0, -1), vec2(-1, 0),
                               vec2(-1, 1), vec2(0, 1)});
  CHECK(hausdorff_distance(D, oracle) <= 1e-12);

  // Any triangle of area 1 has difference body of area 6.
  Body T1 = make_polytope({vec2(0, 0), vec2(2, 0), vec2(0.7, 1)});
  CHECK(volume(T1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(volume(difference_body(T1)) == doctest::Approx(6.0).epsilon(1e-12));

  // Symmetric K: K + (-K) = 2K.
  CounterRng rng(3);
  Body S = random_symmetric_polytope(rng, 2, 7);
  CHECK(hausdorff_distance(difference_body(S),
                           scale_translate(S, 2.0, vec2(0, 0))) <= 1e-9);

  // Segment doubles.
  Body seg = make_polytope({vec2(0, 0), vec2(1, 0)});
  Body dseg = make_polytope({vec2(-1, 0), vec2(1, 0)});
  CHECK(hausdorff_distance(difference_body(seg), dseg) <= 1e-12);
}

TEST_CASE("scale_translate") {
  Body K = scale_translate(unit_square(), 2.0, vec2(0, 0));
  CHECK(hausdorff_distance(K, make_box(vec2(0, 0), vec2(2, 2))) <= 1e-12);
  Body Kn = scale_translate(square(1.0), -1.0, vec2(0, 0));
  CHECK(hausdorff_distance(Kn, square(1.0)) <= 1e-12);
  Body E = scale_translate(make_ball(vec2(0, 0), 1.0), 3.0, vec2(1, 1));
  CHECK(support(E, vec2(1, 0)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_ERRC(scale_translate(K, 0.0, vec2(0, 0)), Errc::DegenerateScale);
}

TEST_CASE("polar bodies") {
  Body sq = square(1.0);
  Body diamond = make_polytope({vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1)});
  CHECK(hausdorff_distance(polar(sq), diamond) <= 1e-12);

  Body disk = make_ball(vec2(0, 0), 1.0);
  CHECK(hausdorff_distance(polar(disk), disk) <= 1e-9);
  CHECK(hausdorff_distance(polar(make_ball(vec2(0, 0), 2.0)),
                           make_ball(vec2(0, 0), 0.5)) <= 1e-9);

  Body T = make_polytope({vec2(2, 0), vec2(0, 2), vec2(-2, -2)});
  CHECK(hausdorff_distance(polar(polar(T)), T) <= 1e-9);

  CHECK_ERRC(polar(unit_square()), Errc::OriginNotInterior);
  Body seg = make_polytope({vec2(-1, 0), vec2(1, 0)});
  CHECK_ERRC(polar(seg), Errc::DegenerateBody);
}

TEST_CASE("polar support identity h_polar(u) = 1/gauge radius") {
  CounterRng rng(21);
  for (int dim = 2; dim <= 3; ++dim) {
    Body K = random_polytope(rng, dim, 10);
    Body P = polar(K);
    for (int i = 0; i < 40; ++i) {
      Eigen::VectorXd u = random_unit(rng, dim);
      // h_{K°}(u) * max{t : tu in K} = 1.
      double t = 1.0 / gauge(K, u);
      CHECK(support(P, u) * t == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("projections and sections on frozen bodies") {
  Body proj = project_hyperplane(unit_square(), vec2(0, 1));
  CHECK(hausdorff_distance(proj, make_polytope({vec2(0, 0), vec2(1, 0)})) <= 1e-12);
  CHECK(intrinsic_measure(proj) == doctest::Approx(1.0).epsilon(1e-12));

  auto sec = section_hyperplane(unit_square(), vec2(0, 1), 0.5);
  REQUIRE(sec.has_value());
  CHECK(intrinsic_measure(*sec) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(section_hyperplane(unit_square(), vec2(0, 1), 5.0).has_value());

  auto chord = section_line(make_ball(vec2(0, 0), 1.0), vec2(0, 0), vec2(1, 0));
  REQUIRE(chord.has_value());
  CHECK(intrinsic_measure(*chord) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(
      section_line(make_ball(vec2(0, 0), 1.0), vec2(0, 5), vec2(1, 0)).has_value());

  // Unit cube cut through the center orthogonally to the main diagonal:
  // regular hexagon of area 3*sqrt(3)/4.
  Eigen::VectorXd u = vec3(1, 1, 1);
  auto hex = section_hyperplane(unit_cube(), u, 1.5);
  REQUIRE(hex.has_value());
  CHECK(intrinsic_measure(*hex) ==
        doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-9));

  CHECK_ERRC(section_hyperplane(make_ball(vec2(0, 0), 1.0), vec2(0, 1), 0.0),
             Errc::UnsupportedOperandPair);
}

TEST_CASE("translative inclusion and subset tests") {
  auto shift = translative_inclusion(unit_square(), square(2.0));
  REQUIRE(shift.has_value());
  CHECK(subset_of(scale_translate(unit_square(), 1.0, *shift), square(2.0)));

  CHECK_FALSE(translative_inclusion(square(2.0), square(1.0)).has_value());

  CHECK(subset_of(unit_square(), unit_square()));
  CHECK(subset_of(unit_square(), square(2.0)));
  CHECK_FALSE(subset_of(square(2.0), square(1.0)));
  CHECK(subset_of(make_ball(vec2(0, 0), 1.0), square(1.0)));
  CHECK_FALSE(subset_of(square(1.0), make_ball(vec2(0, 0), 1.0)));

  CHECK(contains(unit_square(), vec2(0.5, 0.5)));
  CHECK_FALSE(contains(unit_square(), vec2(1.5, 0.5)));
}

TEST_CASE("gauge, max_scaling, hausdorff") {
  CHECK(gauge(square(1.0), vec2(2, 0)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(gauge(square(1.0), vec2(0.25, 0.25)) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(gauge(make_ball(vec2(0, 0), 2.0), vec2(0, 3)) ==
        doctest::Approx(1.5).epsilon(1e-9));
  CHECK_ERRC(gauge(unit_square(), vec2(1, 0)), Errc::OriginNotInterior);

  CHECK(max_scaling(square(1.0), square(1.0)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max_scaling(square(2.0), square(1.0)) == doctest::Approx(0.5).epsilon(1e-9));

  CHECK(hausdorff_distance(square(1.0), square(2.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(hausdorff_distance(square(1.0), square(1.0)) <= 1e-15);
}

TEST_CASE("interior margin, distance, centroid, symmetry") {
  CHECK(interior_margin(square(1.0)) == doctest::Approx(1.0).epsilon(1e-9));
  Body shifted = scale_translate(square(1.0), 1.0, vec2(0.5, 0));
  CHECK(interior_margin(shifted) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(interior_margin(square(2.0)) == doctest::Approx(2.0).epsilon(1e-9));

  CHECK(distance_to(unit_square(), vec2(0.5, 0.5)) == 0.0);
  CHECK(distance_to(unit_square(), vec2(2, 0.5)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(distance_to(unit_square(), vec2(2, 2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(distance_to(make_ball(vec2(0, 0), 1.0), vec2(0, 3)) ==
        doctest::Approx(2.0).epsilon(1e-9));

  Eigen::VectorXd c = vertex_centroid(unit_square());
  CHECK((c - vec2(0.5, 0.5)).norm() <= 1e-12);

  CHECK(is_symmetric(square(1.0)));
  CHECK_FALSE(is_symmetric(unit_square()));
  CHECK_FALSE(is_symmetric(make_polytope({vec2(0, 0), vec2(1, 0), vec2(0, 1)})));
  CHECK(is_symmetric(make_ball(vec2(0, 0), 1.0)));
  CHECK_FALSE(is_symmetric(make_ball(vec2(1, 0), 1.0)));
  CHECK_FALSE(is_symmetric(make_reuleaux(2.0)));
}

TEST_CASE("hrep describes the polytope") {
  Body sq = unit_square();
  HRep H = hrep(sq);
  CHECK(H.offsets.size() == 4);
  for (const auto& v : vertices(sq))
    for (int i = 0; i < H.offsets.size(); ++i)
      CHECK(H.normals.row(i).dot(v) <= H.offsets[i] + 1e-9);
  for (int i = 0; i < H.offsets.size(); ++i)
    CHECK(H.normals.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));

  CounterRng rng(5);
  for (int dim = 2; dim <= 3; ++dim) {
    Body K = random_polytope(rng, dim, 14);
    HRep HK = hrep(K);
    for (const auto& v : vertices(K)) {
      double worst = -1e300;
      for (int i = 0; i < HK.offsets.size(); ++i)
        worst = std::max(worst, HK.normals.row(i).dot(v) - HK.offsets[i]);
      CHECK(worst <= 1e-9);
      // Every vertex is active on some facet.
      CHECK(worst >= -1e-7);
    }
  }
}

TEST_CASE("polytopalized ball approximates the disk") {
  Body P = polytopalize(make_ball(vec2(0, 0), 1.0), 512);
  CHECK(vertices(P).size() == 512);
  CHECK(volume(P) == doctest::Approx(M_PI).epsilon(1e-3));
  CHECK(volume(P) < M_PI);
  Body P3 = polytopalize(make_ball(vec3(0, 0, 0), 1.0), 400);
  CHECK(vertices(P3).size() == 400);
  CHECK(volume(P3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(0.05));
}

TEST_CASE("ellipsoid quadric round trip") {
  Eigen::MatrixXd shape(2, 2);
  shape << 2.0, 0.5, 0.0, 1.0;
  Body E = make_ellipsoid(vec2(0.3, -0.7), shape);
  Ellipsoid back = ellipsoid_from_quadric(ellipsoid_quadric(E.ellipsoid()));
  Body E2 = make_ellipsoid(back.center, back.shape);
  for (const auto& u : direction_grid(2, 64))
    CHECK(support(E, u) == doctest::Approx(support(E2, u)).epsilon(1e-9));
}

TEST_CASE("flat bodies are legal where documented") {
  Body seg = make_polytope({vec2(0, 0), vec2(3, 0)});
  CHECK(seg.flat());
  CHECK(seg.intrinsic_dim() == 1);
  CHECK(support(seg, vec2(1, 0)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(volume(seg) == 0.0);
  CHECK(intrinsic_measure(seg) == doctest::Approx(3.0).epsilon(1e-12));

  Body flat3 = make_polytope({vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0),
                              vec3(1, 1, 0)});
  CHECK(flat3.flat());
  CHECK(flat3.intrinsic_dim() == 2);
  CHECK(intrinsic_measure(flat3) == doctest::Approx(1.0).epsilon(1e-12));

  Body pt = make_polytope({vec2(0.5, 0.5)});
  CHECK(pt.intrinsic_dim() == 0);
  CHECK(intrinsic_measure(pt) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inclusion is preserved by shared affine images") {
  CounterRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Body B = random_polytope(rng, 2, 10);
    Body A = scale_translate(B, rng.uniform(0.2, 0.9), vec2(0, 0));
    REQUIRE(subset_of(A, B, 1e-7));
    double t = rng.uniform(0.5, 2.0);
    Eigen::VectorXd x = testutil::vec2(rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK(subset_of(scale_translate(A, t, x), scale_translate(B, t, x), 1e-7));
  }
}
