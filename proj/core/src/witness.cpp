#include "incgeo/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "incgeo/directions.hpp"
#include "incgeo/errors.hpp"
#include "incgeo/hull.hpp"
#include "incgeo/lp.hpp"
#include "incgeo/measures.hpp"

namespace incgeo {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

double bbox_diameter(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b) {
  Eigen::VectorXd lo = a.front(), hi = a.front();
  for (const auto* set : {&a, &b})
    for (const auto& p : *set) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  return (hi - lo).norm();
}

// Smallest recession of `anchor` along -axis such that one ball centered
// there covers every point of `verts` while its axis-extent stays at or
// below `target`. Needs target > <axis, w> for all w; the extent bound is
// then met with clearance and the radius is the exact covering radius.
BallSpec receded_ball(const std::vector<Eigen::VectorXd>& verts, const Eigen::VectorXd& anchor,
                      const Eigen::VectorXd& axis, double target) {
  double g = target - axis.dot(anchor);
  double s = 0.0;
  for (const auto& w : verts) {
    Eigen::VectorXd rel = w - anchor;
    double clearance = g - rel.dot(axis);
    if (clearance <= 0.0) fail(Errc::InvalidParams, "recession target does not clear the body");
    s = std::max(s, (rel.squaredNorm() - g * g) / (2.0 * clearance));
  }
  BallSpec ball;
  ball.center = anchor - s * axis;
  ball.radius = 0.0;
  for (const auto& w : verts) ball.radius = std::max(ball.radius, (w - ball.center).norm());
  return ball;
}

void require_polytope_pair(const Body& K, const Body& T) {
  if (!K.is_polytope() || !T.is_polytope())
    fail(Errc::UnsupportedOperandPair, "witness machinery needs polytopes; polytopalize first");
  if (K.dim() != T.dim()) fail(Errc::InvalidParams, "bodies must share the ambient dimension");
  if (K.dim() < 2 || K.dim() > 3) fail(Errc::DimensionUnsupported, "witness machinery covers dims 2 and 3");
  if (K.flat() || T.flat()) fail(Errc::DegenerateBody, "witness machinery needs full-dimensional bodies");
}

// The two on-axis balls normalized by a similarity into the canonical frame:
// dk maps to a unit ball, the hyperplane {<axis,x> = lambda0} to {x1 = 1}.
// The balls and lambda0 live in coordinates squashed along the axis by the
// stored factor (1 = untouched); the assembled map folds the squash back in.
struct CapFrame {
  BallSpec dk;
  BallSpec dt;
  Eigen::VectorXd axis;
  double lambda0 = 0.0;
  double squash = 1.0;
};

struct ImageData {
  double m = 0.0;      // inner radius of the image of dk
  double big_m = 0.0;  // outer radius of the image of dt
  double ratio = 0.0;
  EllipsoidParams inner_image;
  EllipsoidParams outer_image;
};

ImageData image_ratio(const CapFrame& f) {
  double rk = f.dk.radius;
  double delta = (f.lambda0 - f.axis.dot(f.dk.center) - rk) / rk;
  double dhat = (f.lambda0 - f.axis.dot(f.dt.center) - f.dt.radius) / rk;
  double rhat = f.dt.radius / rk;
  if (dhat <= 0.0) fail(Errc::WitnessSearchFailed, "outer ball reaches the defining hyperplane");
  BallImageParams pk = ball_image_params(1.0, delta);
  BallImageParams pt = ball_image_params(rhat, dhat);
  ImageData out;
  out.m = pk.inner;
  out.big_m = pt.outer;
  out.ratio = pt.outer / pk.inner;
  out.inner_image = pk.image;
  out.outer_image = pt.image;
  return out;
}

struct MapBuild {
  FLMap F;
  Eigen::VectorXd x0;
  double outer = 0.0;
};

// Axis squash, similarity onto the canonical frame, the canonical map, then
// the affine recenter/rescale that pins the guaranteed inner ball at radius
// exactly 1.
MapBuild assemble_map(const CapFrame& f, const ImageData& img) {
  int n = static_cast<int>(f.axis.size());
  double sigma = 1.0 / f.dk.radius;
  Eigen::MatrixXd U = orthonormal_frame(f.axis);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) -
                      (1.0 - f.squash) * f.axis * f.axis.transpose();
  Eigen::VectorXd q = U.transpose() * f.dk.center;
  Eigen::VectorXd v(n);
  v(0) = 1.0 - sigma * f.lambda0;
  v.tail(n - 1) = -sigma * q.tail(n - 1);
  FLMap S = flmap_from_affine(sigma * U.transpose() * P, v);

  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n);
  c1(0) = 1.0 - img.inner_image.delta - img.inner_image.R;
  Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n);
  c2(0) = 1.0 - img.outer_image.delta - img.outer_image.R;
  FLMap G = flmap_from_affine(Eigen::MatrixXd::Identity(n, n) / img.m, -c2 / img.m);

  MapBuild out;
  out.F = compose(G, compose(canonical_f0(n), S));
  out.x0 = (c1 - c2) / img.m;
  out.outer = img.ratio;
  return out;
}

MapBuild build_impl(const BallSeparation& sep, double eps) {
  if (!(eps > 0.0) || eps > 1.0) fail(Errc::InvalidParams, "eps must lie in (0, 1]");
  int n = static_cast<int>(sep.u.size());
  if (n < 2 || sep.d_k.radius <= 0.0 || sep.d_t.radius <= 0.0)
    fail(Errc::InvalidParams, "separation balls must be present with positive radii");

  bool have_context = sep.body_k.has_value() && sep.body_t.has_value() &&
                      sep.body_k->is_polytope() && sep.body_t->is_polytope() &&
                      sep.dir.size() == n && sep.witness_level > sep.offset;

  if (!have_context) {
    // Nothing to re-solve: certify with the stored balls, absorbing any
    // transverse center offset into an enlarged on-axis outer ball.
    Eigen::VectorXd axis = -sep.u;
    Eigen::VectorXd rel = sep.d_t.center - sep.d_k.center;
    double along = rel.dot(axis);
    Eigen::VectorXd perp = rel - along * axis;
    CapFrame f;
    f.dk = sep.d_k;
    f.dt.center = sep.d_k.center + along * axis;
    f.dt.radius = sep.d_t.radius + perp.norm();
    f.axis = axis;
    f.lambda0 = axis.dot(sep.d_k.center) + 1.5 * sep.d_k.radius;
    ImageData img = image_ratio(f);
    if (img.ratio > eps) {
      std::ostringstream msg;
      msg << "fixed separation certifies ratio " << img.ratio << " > eps " << eps;
      fail(Errc::WitnessSearchFailed, msg.str());
    }
    return assemble_map(f, img);
  }

  const Body& K = *sep.body_k;
  const Body& T = *sep.body_t;
  const Eigen::VectorXd& axis = sep.dir;
  double beta = sep.offset;
  double t_k = support(K, axis);
  Eigen::VectorXd cent_t = vertex_centroid(T);
  const auto& vt = vertices(T);

  HRep hk = hrep(K);
  const int faces = static_cast<int>(hk.normals.rows());

  // The inner factor of the certified ratio depends only on the inside
  // ball's gap-to-radius ratio against the hyperplane, the outer factor only
  // on the outer ball's absolute gap and radius. Squashing both bodies along
  // the axis blunts the cone at the witness level (shrinking the reachable
  // gap ratio quadratically) while the outer side is swept directly, so the
  // schedule halves the squash factor until some sweep point certifies eps.
  ChebyshevBall inball = chebyshev_ball(hk.normals, hk.offsets);
  if (!inball.bounded || inball.radius <= 1e-12 * (1.0 + std::abs(t_k)))
    fail(Errc::WitnessSearchFailed, "inscribed ball of K collapsed");

  double delta_floor = std::min(1e-3, 0.1 * eps * eps);
  double best_seen = std::numeric_limits<double>::infinity();
  double last_ratio = std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int level = 0; level < 60 && stale < 5; ++level) {
    double s = std::pow(0.5, level);
    double tks = s * t_k;
    double betas = s * beta;
    double r_tiny = 1e-12 * (1.0 + std::abs(tks));

    // Faces of the squashed K, unit-normalized, plus one reach row.
    Eigen::MatrixXd rows(faces + 1, n + 1);
    Eigen::VectorXd offs(faces + 1);
    for (int i = 0; i < faces; ++i) {
      Eigen::VectorXd nr = hk.normals.row(i).transpose();
      nr += (1.0 / s - 1.0) * axis.dot(nr) * axis;
      double len = nr.norm();
      rows.row(i).head(n) = nr.transpose() / len;
      rows(i, n) = 1.0;
      offs(i) = hk.offsets(i) / len;
    }

    // Largest inside ball whose top stays within delta * radius of the
    // support level, as an LP over (center, radius).
    auto max_ball = [&](double delta) {
      rows.row(faces).head(n) = -axis.transpose();
      rows(faces, n) = -(1.0 + delta);
      offs(faces) = -tks;
      Eigen::VectorXd obj = Eigen::VectorXd::Zero(n + 1);
      obj(n) = 1.0;
      return lp_maximize(rows, offs, obj);
    };

    Eigen::VectorXd inc = inball.center - (1.0 - s) * axis.dot(inball.center) * axis;
    double inr = s * inball.radius;  // the squashed inball contains this ball
    double hi = std::max((tks - axis.dot(inc) - inr) / inr, 1e-9);
    double lo = 0.0;
    for (int it = 0; it < 60 && hi - lo > 1e-3 * hi + 1e-12; ++it) {
      double mid = 0.5 * (lo + hi);
      LpResult probe = max_ball(mid);
      if (probe.status == LpResult::Status::Optimal && probe.value > r_tiny)
        hi = mid;
      else
        lo = mid;
    }
    // Squashed T, shared by every pass of this level.
    std::vector<Eigen::VectorXd> vts;
    vts.reserve(vt.size());
    for (const auto& w : vt) vts.push_back(w - (1.0 - s) * axis.dot(w) * axis);

    // Ladder of gap ratios: start coarse, then re-solve at the ratio the
    // measured outer factor actually calls for. The outer factor barely
    // moves with the ratio, so a couple of passes settle it. 1e-7 keeps the
    // mapped vertices clear of the hyperplane's domain guard.
    double delta_lo = std::max(1.05 * hi, 1e-7);
    double delta_use = std::max(delta_lo, delta_floor);
    CapFrame best_f;
    ImageData best_img;
    double best = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < 8; ++pass) {
      LpResult ball = max_ball(delta_use);
      if (ball.status != LpResult::Status::Optimal || ball.value <= r_tiny) break;
      Eigen::VectorXd ck = ball.x.head(n);
      double rk = ball.x(n);
      Eigen::VectorXd anchor = ck + (s * axis.dot(cent_t) - axis.dot(ck)) * axis;

      for (double reach : {0.25, 1.0, 4.0}) {
        double lambda0 = tks + reach * delta_use * rk;
        double gap = lambda0 - betas;
        for (double phi : {0.5, 0.25, 0.75, 0.125, 0.0625, 0.03125, 0.9}) {
          CapFrame f;
          f.dk = {ck, rk};
          f.dt = receded_ball(vts, anchor, axis, betas + phi * gap);
          f.axis = axis;
          f.lambda0 = lambda0;
          f.squash = s;
          ImageData img = image_ratio(f);
          if (img.ratio < best) {
            best = img.ratio;
            best_f = f;
            best_img = img;
          }
        }
      }
      if (best <= eps) break;
      double want = 0.15 * eps * eps / (best_img.big_m * best_img.big_m);
      double next = std::max(delta_lo, std::min(delta_use / 4.0, want));
      if (next >= 0.99 * delta_use) break;
      delta_use = next;
    }
    if (!std::isfinite(best)) break;
    last_ratio = std::min(last_ratio, best);
    if (best <= eps) return assemble_map(best_f, best_img);
    if (best >= best_seen - 1e-12)
      ++stale;
    else {
      stale = 0;
      best_seen = best;
    }
  }
  std::ostringstream msg;
  msg << "certified radius ratio " << last_ratio << " stays above eps " << eps
      << " through the squash schedule";
  fail(Errc::WitnessSearchFailed, msg.str());
}

}  // namespace

BallSeparation separate_by_balls(const Body& K, const Body& T) {
  require_polytope_pair(K, T);
  int n = K.dim();

  HRep ht = hrep(T);
  Eigen::VectorXd z = vertex_centroid(T);
  Eigen::VectorXd depth = ht.offsets - ht.normals * z;
  const auto& vk = vertices(K);

  // Witness vertex: maximal gauge of p - z w.r.t. T - z, lexicographic ties.
  auto gauge_of = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd num = ht.normals * (p - z);
    return (num.array() / depth.array()).maxCoeff();
  };
  double gmax = -std::numeric_limits<double>::infinity();
  for (const auto& p : vk) gmax = std::max(gmax, gauge_of(p));
  if (gmax <= 1.0 + eps_geo) fail(Errc::NoWitnessPoint, "every vertex of K lies in T");
  double gtol = 1e-9 * std::max(1.0, std::abs(gmax));
  const Eigen::VectorXd* witness = nullptr;
  for (const auto& p : vk)
    if (gauge_of(p) >= gmax - gtol && (!witness || lex_less(p, *witness))) witness = &p;
  Eigen::VectorXd p = *witness;

  // Separating direction: max margin <u,p> - beta over the l1 ball of
  // directions, beta dominating T's vertices.
  const auto& vt = vertices(T);
  int rows = static_cast<int>(vt.size()) + (1 << n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, n + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (int i = 0; i < static_cast<int>(vt.size()); ++i) {
    A.row(i).head(n) = vt[i].transpose();
    A(i, n) = -1.0;
  }
  for (int mask = 0; mask < (1 << n); ++mask) {
    int r = static_cast<int>(vt.size()) + mask;
    for (int k = 0; k < n; ++k) A(r, k) = (mask >> k) & 1 ? 1.0 : -1.0;
    b(r) = 1.0;
  }
  Eigen::VectorXd obj(n + 1);
  obj.head(n) = p;
  obj(n) = -1.0;
  LpResult lp = lp_maximize(A, b, obj);
  if (lp.status != LpResult::Status::Optimal || lp.value <= 0.0)
    fail(Errc::NoWitnessPoint, "witness vertex admits no separating direction");
  Eigen::VectorXd u = lp.x.head(n).normalized();
  double beta = support(T, u);
  double level = u.dot(p);
  double vio = level - beta;
  double mid = beta + 0.5 * vio;

  BallSpec dt = receded_ball(vt, z, u, beta + 0.25 * vio);

  HRep hk = hrep(K);
  Eigen::MatrixXd cap_normals(hk.normals.rows() + 1, n);
  cap_normals << hk.normals, -u.transpose();
  Eigen::VectorXd cap_offsets(hk.offsets.size() + 1);
  cap_offsets << hk.offsets, -mid;
  ChebyshevBall cap = chebyshev_ball(cap_normals, cap_offsets);
  double diam = bbox_diameter(vk, vt);
  if (!cap.bounded || cap.radius < 1e-9 || cap.radius < 1e-6 * diam) {
    std::ostringstream msg;
    msg << "cap of K above level " << mid << " has Chebyshev radius " << cap.radius;
    fail(Errc::CapDegenerate, msg.str());
  }

  BallSeparation sep;
  sep.d_k = {cap.center, cap.radius};
  sep.d_t = dt;
  double low_k = u.dot(cap.center) - cap.radius;
  double high_t = u.dot(dt.center) + dt.radius;
  sep.u = -u;
  sep.beta = -0.5 * (low_k + high_t);
  sep.body_k = K;
  sep.body_t = T;
  sep.dir = u;
  sep.offset = beta;
  sep.witness_level = level;
  return sep;
}

FLMap build_witness_map(const BallSeparation& sep, double eps) { return build_impl(sep, eps).F; }

WitnessCertificate find_witness(const Body& A, const Body& B, const std::string& functional,
                                double eps) {
  require_polytope_pair(A, B);
  int n = A.dim();
  std::string name = functional;
  if (name != "volume" && name != "surface") {
    bool quermass = name.size() > 1 && name[0] == 'W';
    int j = 0;
    if (quermass) {
      for (size_t i = 1; i < name.size(); ++i) quermass = quermass && std::isdigit(name[i]);
      if (quermass) j = std::stoi(name.substr(1));
    }
    if (!quermass || j < 1 || j >= n) {
      if (quermass && j == n)
        fail(Errc::InvalidParams, "W" + std::to_string(n) + " is constant and admits no strict comparison");
      fail(Errc::InvalidParams, "functional must be volume, surface, or W1..W" + std::to_string(n - 1));
    }
  }

  BallSeparation sep = separate_by_balls(A, B);
  MapBuild mb = build_impl(sep, eps);
  Body fa = apply_body(mb.F, A);
  Body fb = apply_body(mb.F, B);

  // Re-validate the ball sandwich by support dominance on a direction grid.
  double slack = 1e-7 * (1.0 + mb.x0.norm());
  for (const auto& dir : direction_grid(n, n == 2 ? 720 : 642)) {
    if (support(fa, dir) < dir.dot(mb.x0) + 1.0 - slack)
      fail(Errc::MeasuredComparisonFailed, "mapped A fails to contain the certified inner ball");
    if (support(fb, dir) > mb.outer + slack)
      fail(Errc::MeasuredComparisonFailed, "mapped B escapes the certified outer ball");
  }

  WitnessCertificate cert;
  cert.measured["volume"] = {volume(fa), volume(fb)};
  cert.measured["surface"] = {surface_area(fa), surface_area(fb)};
  std::vector<double> qa = quermassintegrals(fa);
  std::vector<double> qb = quermassintegrals(fb);
  for (int j = 1; j < n; ++j) cert.measured["W" + std::to_string(j)] = {qa[j], qb[j]};

  if (mb.outer < 1.0 - 1e-9) {
    for (const auto& [key, vals] : cert.measured)
      if (!(vals.first > vals.second + 1e-9)) {
        std::ostringstream msg;
        msg << key << " on the mapped bodies compares " << vals.first << " vs " << vals.second
            << " despite the ball guarantee";
        fail(Errc::MeasuredComparisonFailed, msg.str());
      }
  }

  cert.F = mb.F;
  cert.eps_target = eps;
  cert.functional = name;
  cert.value_a = cert.measured.at(name).first;
  cert.value_b = cert.measured.at(name).second;
  cert.inner_ball = {mb.x0, 1.0};
  cert.outer_radius = mb.outer;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mb.F.mat);
  cert.condition_number = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  return cert;
}

}  // namespace incgeo
