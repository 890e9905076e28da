#include "incgeo/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace incgeo {
namespace {

constexpr double kPivotTol = 1e-11;

// Dense tableau simplex on  max obj  over  T y = rhs, y >= 0, rhs >= 0,
// starting from the given basis; obj holds reduced costs (basis already
// priced out) and objval the objective of the current basic solution.
// Bland's rule on both entering and leaving choices keeps the walk
// deterministic and cycle-free. Returns false if unbounded.
bool run_simplex(Eigen::MatrixXd& T, Eigen::VectorXd& rhs, Eigen::VectorXd& obj,
                 double& objval, std::vector<int>& basis) {
  const int m = int(T.rows());
  const int ncols = int(T.cols());
  for (int iter = 0; iter < 50000; ++iter) {
    // Entering column: first with positive reduced cost.
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (obj(j) > kPivotTol) { enter = j; break; }
    }
    if (enter < 0) return true;  // optimal

    // Ratio test; smallest basis index breaks ties (Bland).
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double a = T(i, enter);
      if (a > kPivotTol) {
        double ratio = rhs(i) / a;
        if (ratio < best - kPivotTol) {
          best = ratio;
          leave = i;
        } else if (ratio < best + kPivotTol && leave >= 0 && basis[i] < basis[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded

    double piv = T(leave, enter);
    T.row(leave) /= piv;
    rhs(leave) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      double f = T(i, enter);
      if (f != 0.0) {
        T.row(i) -= f * T.row(leave);
        rhs(i) -= f * rhs(leave);
        if (rhs(i) < 0.0 && rhs(i) > -1e-12) rhs(i) = 0.0;
      }
    }
    double f = obj(enter);
    if (f != 0.0) {
      obj -= f * T.row(leave).transpose();
      objval += f * rhs(leave);
    }
    basis[leave] = enter;
  }
  return false;  // iteration cap; treated as failure upstream
}

// Express the objective in terms of the nonbasic variables.
void price_out(const Eigen::MatrixXd& T, const Eigen::VectorXd& rhs,
               const std::vector<int>& basis, Eigen::VectorXd& obj, double& objval) {
  const int m = int(T.rows());
  for (int i = 0; i < m; ++i) {
    double f = obj(basis[i]);
    if (f != 0.0) {
      obj -= f * T.row(i).transpose();
      objval += f * rhs(i);
    }
  }
}

}  // namespace

LpResult lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c) {
  const int m = int(A.rows());
  const int n = int(A.cols());
  LpResult res;

  // Standard form with x = xp - xm, slack per row, artificials on rows whose
  // rhs had to be flipped. Column layout: [xp(n) | xm(n) | s(m) | a(k)].
  std::vector<int> art_rows;
  for (int i = 0; i < m; ++i)
    if (b(i) < 0.0) art_rows.push_back(i);
  const int k = int(art_rows.size());
  const int ncols = 2 * n + m + k;

  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, ncols);
  Eigen::VectorXd rhs(m);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    double sgn = (b(i) < 0.0) ? -1.0 : 1.0;
    T.block(i, 0, 1, n) = sgn * A.row(i);
    T.block(i, n, 1, n) = -sgn * A.row(i);
    T(i, 2 * n + i) = sgn;  // slack
    rhs(i) = sgn * b(i);
    basis[i] = 2 * n + i;
  }
  for (int j = 0; j < k; ++j) {
    T(art_rows[j], 2 * n + m + j) = 1.0;
    basis[art_rows[j]] = 2 * n + m + j;
  }

  if (k > 0) {
    // Phase 1: maximize -sum(artificials); feasible iff optimum reaches 0.
    Eigen::VectorXd obj1 = Eigen::VectorXd::Zero(ncols);
    for (int j = 0; j < k; ++j) obj1(2 * n + m + j) = -1.0;
    double objval1 = 0.0;
    price_out(T, rhs, basis, obj1, objval1);
    if (!run_simplex(T, rhs, obj1, objval1, basis) || objval1 < -1e-8) {
      res.status = LpResult::Status::Infeasible;
      return res;
    }
    // Pivot any artificial still in the basis (at value zero) out of it.
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= 2 * n + m) {
        int enter = -1;
        for (int j = 0; j < 2 * n + m; ++j) {
          if (std::abs(T(i, j)) > 1e-9) { enter = j; break; }
        }
        if (enter >= 0) {
          double piv = T(i, enter);
          T.row(i) /= piv;
          rhs(i) /= piv;
          for (int r = 0; r < m; ++r) {
            if (r == i) continue;
            double f = T(r, enter);
            if (f != 0.0) {
              T.row(r) -= f * T.row(i);
              rhs(r) -= f * rhs(i);
            }
          }
          basis[i] = enter;
        }
        // else: all-zero row, a redundant constraint; the artificial stays
        // basic at zero with a zero column and can never pivot again.
      }
    }
    // Artificials are done; remove them from play.
    T.rightCols(k).setZero();
    for (int j = 0; j < k; ++j) T(art_rows[j], 2 * n + m + j) = 0.0;
  }

  Eigen::VectorXd obj = Eigen::VectorXd::Zero(ncols);
  obj.segment(0, n) = c;
  obj.segment(n, n) = -c;
  double objval = 0.0;
  price_out(T, rhs, basis, obj, objval);
  obj.tail(k).setZero();  // keep artificial columns inert
  if (!run_simplex(T, rhs, obj, objval, basis)) {
    res.status = LpResult::Status::Unbounded;
    return res;
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(ncols);
  for (int i = 0; i < m; ++i) y(basis[i]) = rhs(i);
  res.x = y.segment(0, n) - y.segment(n, n);
  res.value = c.dot(res.x);
  res.status = LpResult::Status::Optimal;
  return res;
}

ChebyshevBall chebyshev_ball(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets) {
  const int m = int(normals.rows());
  const int d = int(normals.cols());
  Eigen::MatrixXd A(m, d + 1);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    double nn = normals.row(i).norm();
    if (nn < 1e-14) {  // degenerate row 0.x <= b: drop if satisfied, else pin r
      A.row(i).setZero();
      A(i, d) = (offsets(i) >= 0.0) ? 0.0 : 1.0;
      b(i) = offsets(i);
      continue;
    }
    A.block(i, 0, 1, d) = normals.row(i) / nn;
    A(i, d) = 1.0;
    b(i) = offsets(i) / nn;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d + 1);
  c(d) = 1.0;
  LpResult lp = lp_maximize(A, b, c);
  ChebyshevBall ball;
  if (lp.status == LpResult::Status::Optimal) {
    ball.center = lp.x.segment(0, d);
    ball.radius = lp.x(d);
    ball.bounded = true;
  } else if (lp.status == LpResult::Status::Unbounded) {
    ball.bounded = false;
    ball.radius = std::numeric_limits<double>::infinity();
  }
  return ball;
}

}  // namespace incgeo
