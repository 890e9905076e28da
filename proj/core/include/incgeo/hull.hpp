#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace incgeo {

// 2D convex hull, counter-clockwise, starting at the lexicographically
// smallest vertex. Collinear and duplicate points are dropped, so the result
// is the irredundant extreme set (within tolerance).
std::vector<Eigen::VectorXd> hull2d(std::vector<Eigen::VectorXd> pts);

// 3D convex hull. `vertices` is the set of corner points the triangulation
// refers to; `triangles` index into it with outward orientation. Corner
// points are extreme up to degeneracies noted below: a point lying on a hull
// edge or facet can survive as a corner when insertions arrive in unlucky
// order, so callers needing a strictly irredundant vertex list should run
// prune_to_extreme on `vertices` afterwards. Requires a full-dimensional
// point set.
struct Hull3d {
  std::vector<Eigen::VectorXd> vertices;
  std::vector<std::array<int, 3>> triangles;
};
Hull3d hull3d(const std::vector<Eigen::VectorXd>& pts);

// Affine hull of a point set: orthonormal basis of the span of (p - origin)
// and its dimension, with a thickness tolerance relative to the data scale.
struct AffineFrame {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;  // n x dim, orthonormal columns
  int dim = 0;
};
AffineFrame affine_frame(const std::vector<Eigen::VectorXd>& pts);

// Remove every point that lies in the convex hull of the others (within
// tolerance), via one small separation LP per point. Order of survivors is
// lexicographic.
std::vector<Eigen::VectorXd> prune_to_extreme(const std::vector<Eigen::VectorXd>& pts);

// H-representation { x : normals.row(i) . x <= offsets(i) } with unit rows,
// derived from the hull of a full-dimensional vertex set (dim 2 or 3).
// Coplanar hull triangles are merged into one facet row.
struct HRep {
  Eigen::MatrixXd normals;
  Eigen::VectorXd offsets;
};
HRep facet_hrep(const std::vector<Eigen::VectorXd>& vertices);

// Orthogonal matrix whose first column is v/|v| (Householder-based, so the
// remaining columns are a deterministic orthonormal basis of v-perp).
Eigen::MatrixXd orthonormal_frame(const Eigen::VectorXd& v);

}  // namespace incgeo
