#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incgeo/body.hpp"
#include "incgeo/identify.hpp"

namespace incgeo {

// Mixed volumes V(A, u_t K_2, ..., u_t K_n) along the degeneration
// u_t = P_E + t v v^T (E = v-perp), next to the closed-form limit they must
// approach: the flattened tuple factors as w_A(v) * V_{n-1}(P_E K_2, ...)/n.
struct DegenerateLimit {
  std::vector<double> values;  // one mixed volume per step, in step order
  double limit = 0.0;          // linear extrapolation from the last two steps
  double factorized = 0.0;     // w_A(v) * V_{n-1}(P_E K_2, ...) / n
};

// steps must be positive and strictly decreasing. The extrapolated limit and
// the factorized value must agree within 1e-5 relative, otherwise the run
// fails with MeasuredComparisonFailed.
DegenerateLimit degenerate_mixed_limit(const Body& A,
                                       const std::vector<Body>& ks,
                                       const Eigen::VectorXd& v,
                                       const std::vector<double>& steps);

// Probes the linear-position comparison V(uA, K_2, ...) <= V(uB, K_2, ...)
// for origin-symmetric bodies. When A sits inside B the driver samples
// random unimodular u and confirms the inequality; otherwise it locates a
// width gap w_A(v) > w_B(v) and drives the near-degenerate family
// u_t = (P_E + t v v^T) o g (g the minimal rotation taking v to e1,
// t in 1e-1 .. 1e-4, applied to the K_i) until the comparison fails.
SuiteReport affine_identify_driver(const Body& A, const Body& B,
                                   const std::vector<Body>& ks, int samples,
                                   std::uint64_t seed);

struct TupleSeparation {
  std::vector<double> ts;      // ts[i] * As[i] fits in Bs[i]; product is 1
  bool inclusion_ok = false;   // the derived ts[0] * As[0] in Bs[0] holds
  bool products_ok = false;    // support products dominated on the grid
  double worst_product_margin = 0.0;  // max over tuples of lhs - rhs
  std::string note;
};

// Tuple comparison for origin-symmetric bodies: fixes t_i as the largest
// scaling with t_i A_i inside B_i for i >= 2, derives t_1 as the reciprocal
// of their product, and re-checks t_1 A_1 inside B_1. Alongside, evaluates
// the degenerate segment configuration: products of supports
// prod_i h_{A_i}(u_i) vs prod_i h_{B_i}(u_i) over a deterministic grid of
// direction tuples, reporting the worst margin (a positive margin means the
// tuple hypothesis itself fails).
TupleSeparation tuple_separation_driver(const std::vector<Body>& as,
                                        const std::vector<Body>& bs);

// The non-symmetric counterexample to the tuple machinery in the plane:
// R a Reuleaux triangle of width 2, D the polytopalized unit disk. Sampled
// unimodular pairs (u1, u2) keep V(u1 R, u2 D) <= V(u1 D, u2 D) within the
// polytopalization tolerance, yet no translate of scale-1 D covers R, so the
// symmetric conclusion fails without symmetry.
SuiteReport remark_counterexample_suite(int samples, std::uint64_t seed);

struct ProjectiveTupleReport {
  SuiteReport suite;                    // one row per attempted delta
  std::optional<double> reversal_delta; // first delta with a strict reversal
  std::vector<double> lambdas;          // scalings applied to K_i and L_i
  double eps0 = 0.0;                    // radius of the on-axis inner ball
  double big_r = 0.0;                   // normalized outer-ball radius
  double eps1 = 0.0;                    // normalized inner-ball radius
  double d_outer = 0.0;                 // normalized hyperplane gap, outer ball
  double d_inner = 0.0;                 // normalized hyperplane gap, inner ball
};

// Constructive fractional-linear tuple witness: given K1 not included in L1
// (all bodies with 0 interior), picks a facet of K1 whose plane clears the
// support of L1 and builds three balls on its inward normal line: a ball
// tangent to the facet from inside K1, an inner ball of radius eps0 inside
// every scaled K_i, and an enclosing ball of L1 and the scaled L_i receded
// down the axis. The canonical projective map sends the tangent ball to the
// unit ball at gap delta below the defining hyperplane; marching delta down
// eps_schedule (halvings of 1/2 when empty) blows up the K side while the L
// side stays bounded, and the report carries the first delta at which
// V(F K1, F(lambda_i K_i), ...) strictly exceeds V(F L1, F(lambda_i L_i), ...)
// on the mapped polytopes. Throws WitnessSearchFailed when no facet of K1
// clears L1, when the inner ball cannot be placed, or when the schedule is
// exhausted without a reversal.
ProjectiveTupleReport projective_tuple_witness(
    const Body& k1, const Body& l1, const std::vector<Body>& kis,
    const std::vector<Body>& lis, const std::vector<double>& eps_schedule);

struct ClosingInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // lhs <= rhs
};

// The scalar inequality closing the projective tuple argument:
// lhs = (1/(delta(delta+2))) * (eps1/(d1(d1+2 eps1)))^(n-1),
// rhs = (R/(d sqrt(d+2R)))^n. All parameters positive, d and d1 above 2.
// The configuration built by projective_tuple_witness keeps rhs fixed while
// lhs grows without bound as delta shrinks, so holds must eventually flip.
ClosingInequality closing_inequality(double delta, double big_r, double d,
                                     double eps1, double d1, int n);

}  // namespace incgeo
