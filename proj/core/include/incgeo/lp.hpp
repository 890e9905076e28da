#pragma once

#include <Eigen/Dense>

namespace incgeo {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Eigen::VectorXd x;    // optimizer over the free variables
  double value = 0.0;   // objective value at x
};

// Solve  max c^T x  s.t.  A x <= b  with x free, by dense two-phase simplex
// (Bland's rule, deterministic). Sized for the problems in this library:
// a handful of variables, up to a few hundred constraints.
LpResult lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c);

// Largest ball inside {x : normals.row(i) . x <= offsets(i)}; normals need
// not be unit, they are normalized internally. Returns (center, radius) via
// the LP  max r  s.t.  u_i.x + r <= c_i.  A negative radius certifies that
// the region is empty; status Unbounded means the normals do not positively
// span the space (region contains a ray of growing balls).
struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = -1.0;
  bool bounded = false;
};
ChebyshevBall chebyshev_ball(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets);

}  // namespace incgeo
