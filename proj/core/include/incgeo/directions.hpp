#pragma once

#include <Eigen/Dense>
#include <vector>

namespace incgeo {

// Unit-direction grids used for support-function comparisons (Hausdorff
// estimates, inclusion re-validation, symmetry checks).
//
// dim 2: `count` angles, uniformly spaced starting at angle 0.
// dim 3: subdivided icosahedron; the coarsest level with at least `count`
//        vertices is used, so the result may hold slightly more directions
//        than requested (12, 42, 162, 642, 2562, ...). Vertices are sorted
//        lexicographically to make the grid order reproducible.
std::vector<Eigen::VectorXd> direction_grid(int dim, int count);

// Library defaults: 720 directions in 2D, 2562 in 3D.
std::vector<Eigen::VectorXd> default_direction_grid(int dim);

}  // namespace incgeo
