#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "incgeo/body.hpp"

namespace incgeo {

// One measured comparison inside a suite run. lhs/rhs are the two sides of
// whatever inequality the suite probes; margin is rhs - lhs unless the suite
// documents otherwise, so a negative margin flags a violation.
struct SuiteRow {
  int sample_id = 0;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string verdict;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::string verdict;  // suite-level: CONSISTENT | VIOLATION | INCONCLUSIVE
  std::string note;
};

// Flat unit-measure ball in the hyperplane through the origin orthogonal to
// u: a segment of length 1 in 2D, a disk of area 1 (sampled as a 256-gon) in
// 3D. Mixed-volume and sum-comparison drivers use it to localize width.
Body flat_unit_ball(const Eigen::VectorXd& u);

// Recovers the width of A in direction u from volumes of Minkowski sums
// |A + r * flat_unit_ball(u)| on the given grid of at least n scale factors
// (strictly increasing, positive). The volumes are fitted to the exact
// polynomial in r and the top coefficient is read off; in 2D this is exact,
// in 3D the flat disk is a 256-gon so the result carries its area defect.
double width_from_sums(const Body& A, const Eigen::VectorXd& u,
                       const std::vector<double>& r_grid);

// A certified failure of |A + rK| <= |B + rK|: the flat ball K, the scale r,
// both volumes, and the width-violating direction that produced it.
struct SumViolation {
  Body k;
  double r = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  Eigen::VectorXd dir;
};

// For origin-symmetric A, B with A not contained in B, produces a Minkowski
// sum comparison that fails: a direction where A is wider than B, the flat
// ball for that direction, and a scale at which |A + rK| > |B + rK|.
// Throws SymmetryRequired unless both bodies are symmetric, and
// NoViolationExists when A is contained in B.
SumViolation sym_sum_falsifier(const Body& A, const Body& B);

// The pair (V(A, K, ..., K), V(B, K, ..., K)) with K repeated n-1 times.
std::pair<double, double> mixed_ineq_check(const Body& A, const Body& B,
                                           const Body& K);

// Probes V(A, K[n-1]) <= V(B, K[n-1]) over random simplices K and combines
// the outcome with the translative inclusion LP: no violation and a feasible
// translate is CONSISTENT, a violation with an infeasible LP is VIOLATION,
// no violation with an infeasible LP is INCONCLUSIVE. A measured violation
// for a pair the LP certifies as included cannot happen and throws
// MeasuredComparisonFailed.
SuiteReport lutwak_simplex_suite(const Body& A, const Body& B, int samples,
                                 std::uint64_t seed);

// Compares hyperplane sections of Minkowski sums: for sampled (K, E) pairs,
// measures A + K and B + K inside the hyperplane E through the origin. When
// A is not contained in any translate of B, appends a constructed violation:
// K flat in a width-violating direction u, E a hyperplane containing u, and
// the scale of K doubled until the section of A + rK strictly beats that of
// B + rK.
SuiteReport section_sum_suite(const Body& A, const Body& B, int samples,
                              std::uint64_t seed);

struct ChainLink {
  std::string name;
  bool feasible = false;
  Eigen::VectorXd shift;  // the translate found, when feasible
};

struct ChainReport {
  std::vector<ChainLink> links;
  bool all_feasible = false;
  std::string first_failure;
};

// Certifies the containment chain that transfers section comparisons from
// symmetric to general bodies: A + x_A inside B - B, B - B inside
// (n+1)(B + x_B), and -B inside nB + x. Each link is an inclusion LP; the
// report carries the witnessing translates.
ChainReport nonsym_sections_driver(const Body& A, const Body& B);

struct ProjectionReport {
  std::vector<SuiteRow> rows;
  bool projections_ok = false;   // every sampled shadow of A fits in B's
  bool global_feasible = false;  // A fits in (n/(n-1)) * B up to translation
  double dilation = 0.0;         // smallest feasible factor found in [1, 2]
};

// Compares shadows: projects A and B onto e_samples hyperplanes and tests
// whether each projection of A fits in the matching projection of B up to
// translation. Once every sampled shadow fits, checks the guaranteed global
// dilation A + x in (n/(n-1)) * B and reports the smallest feasible factor
// found by bisection in [1, 2] (infinity when even factor 2 fails).
ProjectionReport projection_driver(const Body& A, const Body& B,
                                   int e_samples);

// Support function of the projection body: the shadow area of K in
// direction u, i.e. the intrinsic measure of the projection onto u-perp.
double projection_body_support(const Body& K, const Eigen::VectorXd& u);

struct ReuleauxReport {
  SuiteReport suite;
  double min_chord = 0.0;      // min over the direction grid of the B-chord
  double equality_gap = 0.0;   // distance of the best chord to exactly 2
  bool translate_feasible = false;  // some translate of A fits in B
};

// The counterexample showing chord comparisons cannot certify inclusion:
// R a Reuleaux triangle of width 2 sampled on m arcs, B its polar, A a
// polytopalized unit disk. Every central chord of B is at least 2 = the
// chord of A, with equality in the vertex directions of R, yet no translate
// of A fits inside B. Chords of the polar are evaluated exactly as
// 1/h_R(w) + 1/h_R(-w) over a one-degree grid.
ReuleauxReport reuleaux_counterexample(int m);

}  // namespace incgeo
