#pragma once

#include <Eigen/Dense>

#include "incgeo/body.hpp"

namespace incgeo {

// Fractional-linear map x -> (Ax + b) / (<x,c> + d), stored as the
// (n+1)x(n+1) homogeneous matrix [[A, b], [c^T, d]]. The defining hyperplane
// is H = { <x,c> + d = 0 }; domain_sign picks which open side of H the map
// is used on (+1: <x,c>+d > 0). Matrices compose by multiplication and
// invert by matrix inverse; the scale of the matrix is not normalized.
struct FLMap {
  Eigen::MatrixXd mat;
  int domain_sign = +1;
};

// Decomposition of a non-affine F as B(F(Cx + x0) - y0) = F0(x).
struct CanonicalDecomposition {
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::VectorXd x0;
  Eigen::VectorXd y0;
};

// E_{R,r,delta}: semiaxis R along e1, r in the transverse directions,
// boundary at distance delta from {x1 = 1} on the {x1 < 1} side (center at
// x1 = 1 - delta - R).
struct EllipsoidParams {
  double R = 0.0;
  double r = 0.0;
  double delta = 0.0;
};

// Image data of a ball under the canonical map, with the inner/outer ball
// radii sandwiching the image ellipsoid.
struct BallImageParams {
  EllipsoidParams image;
  double inner = 0.0;
  double outer = 0.0;
};

FLMap make_flmap(Eigen::MatrixXd mat, int domain_sign);
FLMap flmap_from_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// x -> x/(x1 - 1), defining hyperplane {x1 = 1}. Usable on either side;
// the ball-image and polarity configurations live on {x1 < 1} (the default),
// the canonical-form base points on {x1 > 1}.
FLMap canonical_f0(int n, int domain_sign = -1);
FLMap compose(const FLMap& F, const FLMap& G);  // F after G
FLMap inverse(const FLMap& F);

Eigen::VectorXd apply_point(const FLMap& F, const Eigen::VectorXd& x);

// K strictly on the declared side of the defining hyperplane (margin eps_geo).
bool admissible(const FLMap& F, const Body& K);

// Image body: hull of mapped vertices for polytopes, quadric congruence
// Q -> inv(M)^T Q inv(M) for ellipsoids.
Body apply_body(const FLMap& F, const Body& K);

Body body_from_params(const EllipsoidParams& p, int n);

// Fact: the canonical map takes E_{R,R,d} to
// E_{R/(d(d+2R)), R/sqrt(d(d+2R)), 1/(d+2R)} (exact quadric image: the axial
// semiaxis picks up 1/(d(d+2R)), the transverse ones 1/sqrt(d(d+2R)));
// inner/outer are min/max of the two image semiaxes.
BallImageParams ball_image_params(double R, double delta);

CanonicalDecomposition canonical_decompose(const FLMap& F, const Eigen::VectorXd& x0);

// Hausdorff distance between F0(K) and polar(e1 - polar(K)); the two agree
// for any K with 0 interior lying in {x1 < 1}.
double polarity_identity_check(const Body& K);

}  // namespace incgeo
