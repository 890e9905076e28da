#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "doctest.h"
#include "incgeo/body.hpp"
#include "incgeo/errors.hpp"
#include "incgeo/rng.hpp"

// Asserts that evaluating `expr` throws a GeomError with the given code.
#define CHECK_ERRC(expr, errc)                                             \
  do {                                                                     \
    std::optional<incgeo::Errc> got_;                                      \
    std::string what_;                                                     \
    try {                                                                  \
      (void)(expr);                                                        \
    } catch (const incgeo::GeomError& e_) {                                \
      got_ = e_.code();                                                    \
      what_ = e_.what();                                                   \
    }                                                                      \
    REQUIRE_MESSAGE(got_.has_value(), #expr " should throw " #errc);       \
    CHECK_MESSAGE(*got_ == (errc), #expr " threw the wrong code: ", what_); \
  } while (0)

namespace testutil {

inline Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

inline Eigen::VectorXd vec3(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

// [-a, a]^2
inline incgeo::Body square(double a) {
  return incgeo::make_box(vec2(-a, -a), vec2(a, a));
}

// [-a, a]^3
inline incgeo::Body cube(double a) {
  return incgeo::make_box(vec3(-a, -a, -a), vec3(a, a, a));
}

inline incgeo::Body unit_square() {
  return incgeo::make_box(vec2(0.0, 0.0), vec2(1.0, 1.0));
}

inline incgeo::Body unit_cube() {
  return incgeo::make_box(vec3(0.0, 0.0, 0.0), vec3(1.0, 1.0, 1.0));
}

// Hull of m gaussian points, recentered so the origin is interior.
inline incgeo::Body random_polytope(incgeo::CounterRng& rng, int dim, int m) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(std::size_t(m));
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd p(dim);
    for (int j = 0; j < dim; ++j) p[j] = rng.normal();
    pts.push_back(p);
  }
  incgeo::Body K = incgeo::make_polytope(pts);
  Eigen::VectorXd c = incgeo::vertex_centroid(K);
  return incgeo::scale_translate(K, 1.0, -c);
}

// Hull of +-p over m/2 gaussian points; origin-symmetric with 0 interior.
inline incgeo::Body random_symmetric_polytope(incgeo::CounterRng& rng, int dim,
                                              int m) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(std::size_t(2 * m));
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd p(dim);
    for (int j = 0; j < dim; ++j) p[j] = rng.normal();
    pts.push_back(p);
    pts.push_back(-p);
  }
  return incgeo::make_polytope(pts);
}

inline Eigen::VectorXd random_unit(incgeo::CounterRng& rng, int dim) {
  Eigen::VectorXd u(dim);
  double nrm = 0.0;
  do {
    for (int j = 0; j < dim; ++j) u[j] = rng.normal();
    nrm = u.norm();
  } while (nrm < 1e-6);
  return u / nrm;
}

}  // namespace testutil
