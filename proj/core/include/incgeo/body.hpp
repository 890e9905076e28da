#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

#include "incgeo/errors.hpp"
#include "incgeo/hull.hpp"

namespace incgeo {

// Convex body in R^2 or R^3, either a V-polytope (irredundant vertex list)
// or an ellipsoid (center plus shape matrix mapping the unit ball). Flat
// bodies (affine hull of lower dimension) are legal: polytopes report their
// intrinsic dimension, and projections of ellipsoids may carry a singular
// shape. Full-dimensional ellipsoid constructors require invertible shape.
struct VPolytope {
  std::vector<Eigen::VectorXd> vertices;  // 2D full-dim: CCW from lex-min
  int dim = 0;
  int intrinsic_dim = 0;
};

struct Ellipsoid {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;  // body = shape * D_n + center
};

class Body {
 public:
  explicit Body(VPolytope p) : rep_(std::move(p)) {}
  explicit Body(Ellipsoid e) : rep_(std::move(e)) {}

  bool is_polytope() const { return std::holds_alternative<VPolytope>(rep_); }
  const VPolytope& polytope() const;
  const Ellipsoid& ellipsoid() const;
  int dim() const;
  int intrinsic_dim() const;
  bool flat() const { return intrinsic_dim() < dim(); }

 private:
  std::variant<VPolytope, Ellipsoid> rep_;
};

// ---- constructors ---------------------------------------------------------

Body make_polytope(const std::vector<Eigen::VectorXd>& pts);
Body make_ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape);
Body make_ball(const Eigen::VectorXd& center, double radius);
Body make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

// Inscribed polytope with m boundary points (2D: uniform angles through the
// shape map; 3D: Fibonacci sphere points through the shape map).
Body polytopalize(const Body& ellipsoid_body, int m);

// Arc-sampled Reuleaux triangle of the given width, incenter at the origin,
// one vertex direction at angle 90 degrees. m must be a positive multiple of
// 3; each circular arc is sampled at m/3 uniform steps with both endpoints
// (the triangle corners) included, so support directions that land on the
// sample grid are exact.
Body make_reuleaux(double width, int m = 360);

// ---- support machinery ----------------------------------------------------

double support(const Body& K, const Eigen::VectorXd& u);  // h_K(u), u not normalized
double width(const Body& K, const Eigen::VectorXd& u);    // u normalized internally

// ---- arithmetic -----------------------------------------------------------

Body minkowski_sum(const Body& A, const Body& B);  // V-polytopes only
Body scale_translate(const Body& K, double t, const Eigen::VectorXd& x);
Body polar(const Body& K);            // 0 strictly interior required
Body difference_body(const Body& K);  // K + (-K)

// ---- projections and sections --------------------------------------------

Body project_hyperplane(const Body& K, const Eigen::VectorXd& u);  // onto u-perp

// Section by {<u,x> = beta}; nullopt unless the hyperplane meets the
// interior. Polytopes only.
std::optional<Body> section_hyperplane(const Body& K, const Eigen::VectorXd& u, double beta);

// Section by the line {p + t*dir}; nullopt unless the line meets the
// interior. Full-dimensional bodies.
std::optional<Body> section_line(const Body& K, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& dir);

// ---- inclusion machinery --------------------------------------------------

// Find x0 with A + x0 inside B (LP feasibility over B's facets, with eps_geo
// slack); nullopt if no translate works. B must be a full-dimensional
// polytope; A may be any body.
std::optional<Eigen::VectorXd> translative_inclusion(const Body& A, const Body& B);

// A subset of B with the shift forced to zero, checked on B's exact boundary
// description (facets or ellipsoid gauge).
bool subset_of(const Body& A, const Body& B, double tol = eps_geo);

bool contains(const Body& K, const Eigen::VectorXd& x, double tol = eps_geo);

// Minkowski gauge of v w.r.t. B, 0 strictly interior to B.
double gauge(const Body& B, const Eigen::VectorXd& v);

// max { t : tA inside B } for a polytope A; 0 strictly interior to B.
double max_scaling(const Body& A, const Body& B);

// Support-grid Hausdorff estimate: max |h_A - h_B| over a direction grid
// (defaults: 720 directions in 2D, 2562 in 3D). Exact for polytopes whenever
// the grid contains the active support directions of the difference.
double hausdorff_distance(const Body& A, const Body& B, int grid_count = 0);

// ---- assorted helpers ------------------------------------------------------

const std::vector<Eigen::VectorXd>& vertices(const Body& K);  // polytopes
HRep hrep(const Body& K);  // facet description, full-dimensional polytopes
double interior_margin(const Body& K);  // distance from 0 to the boundary, <0 outside
double distance_to(const Body& K, const Eigen::VectorXd& x);  // polytopes and balls
Eigen::VectorXd vertex_centroid(const Body& K);
bool is_symmetric(const Body& K, double tol = 1e-7);  // K == -K

// Quadric form of an ellipsoid: (n+1)x(n+1) symmetric Q with
// body = { x : [x;1]^T Q [x;1] <= 0 }, normalized to Q(n,n) = -1 when the
// origin is interior (the constant coefficient is then nonzero).
Eigen::MatrixXd ellipsoid_quadric(const Ellipsoid& e);
Ellipsoid ellipsoid_from_quadric(Eigen::MatrixXd Q);  // bounded case

}  // namespace incgeo
