#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "incgeo/body.hpp"
#include "incgeo/projective.hpp"

namespace incgeo {

struct BallSpec {
  Eigen::VectorXd center;
  double radius = 0.0;
};

// Disjoint ball pair certifying K not-subset-of T: d_k sits inside K strictly
// on the {<u,x> < beta} side of the hyperplane H = {<u,x> = beta}, while T
// sits inside d_t strictly on the {<u,x> > beta} side.
struct BallSeparation {
  BallSpec d_k;
  BallSpec d_t;
  Eigen::VectorXd u;  // unit normal of H
  double beta = 0.0;

  // Construction context reused by the witness-map search: the input bodies
  // plus the separating direction (= -u), its offset over T, and the witness
  // vertex level along it.
  std::optional<Body> body_k;
  std::optional<Body> body_t;
  Eigen::VectorXd dir;
  double offset = 0.0;         // sup over T of <dir, x>
  double witness_level = 0.0;  // <dir, witness vertex of K>
};

// Fractional-linear witness with the certified ball sandwich and the
// functional values measured on the actual mapped bodies.
struct WitnessCertificate {
  FLMap F;
  double eps_target = 0.0;
  std::string functional;  // "volume" | "surface" | "W<j>"
  double value_a = 0.0;
  double value_b = 0.0;
  std::map<std::string, std::pair<double, double>> measured;  // name -> (on FA, on FB)
  BallSpec inner_ball;        // radius 1 ball inside F(A)
  double outer_radius = 0.0;  // F(B) fits in this ball around 0
  double condition_number = 0.0;  // of the homogeneous matrix (reported only)
};

// Ball separation certifying K not-subset-of T: witness vertex of K with
// maximal gauge w.r.t. T (lexicographic ties), an LP separating direction,
// a receded ball swallowing T below the mid-level, and the Chebyshev ball
// of the cap of K above it.
BallSeparation separate_by_balls(const Body& K, const Body& T);

// Compose an axis squash, a similarity onto the canonical frame, the
// canonical map, and an affine recenter/rescale so that the image of K
// contains a unit ball while the image of T fits in eps * (unit ball around
// 0). The search flattens K along the separating axis by halved factors,
// re-solving per level for the inside ball with the smallest gap-to-radius
// ratio against the hyperplane and sweeping outer-ball recessions, until the
// certified radius ratio drops below eps (at most 60 levels).
FLMap build_witness_map(const BallSeparation& sep, double eps);

// End-to-end driver: separation, map, mapped bodies, measured functional
// comparison. `functional` is "volume", "surface", or "W<j>" with
// 1 <= j <= n-1 (W_n is constant and admits no strict comparison).
WitnessCertificate find_witness(const Body& A, const Body& B, const std::string& functional,
                                double eps);

}  // namespace incgeo
