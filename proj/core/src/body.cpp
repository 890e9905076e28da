#include "incgeo/body.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "incgeo/directions.hpp"
#include "incgeo/lp.hpp"

namespace incgeo {
namespace {

constexpr double kZeroDirTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;

void check_dim(const Eigen::VectorXd& v, int n, const char* what) {
  if (v.size() != n) fail(Errc::ArityMismatch, what);
}

double coord_scale(const std::vector<Eigen::VectorXd>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return s;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

double point_segment_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b) {
  const Eigen::VectorXd d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 < 1e-30) return (p - a).norm();
  const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double point_triangle_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Vector3d ab = b - a, ac = c - a;
  const Eigen::Vector3d n = ab.cross(ac);
  const double n2 = n.squaredNorm();
  if (n2 < 1e-30) {
    return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                     point_segment_distance(p, a, c)});
  }
  const Eigen::Vector3d ap = p - a;
  const Eigen::Vector3d q = p - n * (n.dot(ap) / n2);
  const bool in0 = Eigen::Vector3d(b - a).cross(q - Eigen::Vector3d(a)).dot(n) >= -1e-12 * n2;
  const bool in1 = Eigen::Vector3d(c - b).cross(q - Eigen::Vector3d(b)).dot(n) >= -1e-12 * n2;
  const bool in2 = Eigen::Vector3d(a - c).cross(q - Eigen::Vector3d(c)).dot(n) >= -1e-12 * n2;
  if (in0 && in1 && in2) return std::abs(n.dot(ap)) / std::sqrt(n2);
  return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                   point_segment_distance(p, a, c)});
}

// Undirected edge list of the convex hull of a full-dimensional 3D vertex set.
std::vector<std::pair<int, int>> hull_edges(const Hull3d& h) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(h.triangles.size() * 3);
  for (const auto& t : h.triangles) {
    const int idx[3] = {t[0], t[1], t[2]};
    for (int k = 0; k < 3; ++k) {
      int a = idx[k], b = idx[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Eigen::MatrixXd sqrt_inverse_free_symmetric(const Eigen::MatrixXd& M, double exponent) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] <= 0.0) fail(Errc::InvalidParams, "matrix power of a non-positive form");
    lam[i] = std::pow(lam[i], exponent);
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

bool uniform_ball_shape(const Eigen::MatrixXd& S, double* radius) {
  const int n = S.rows();
  const double r = S(0, 0);
  if (r <= 0.0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double want = (i == j) ? r : 0.0;
      if (std::abs(S(i, j) - want) > 1e-12 * std::max(1.0, r)) return false;
    }
  *radius = r;
  return true;
}

}  // namespace

// ---- Body accessors --------------------------------------------------------

const VPolytope& Body::polytope() const {
  if (!is_polytope()) fail(Errc::UnsupportedOperandPair, "polytope operation on an ellipsoid");
  return std::get<VPolytope>(rep_);
}

const Ellipsoid& Body::ellipsoid() const {
  if (is_polytope()) fail(Errc::UnsupportedOperandPair, "ellipsoid operation on a polytope");
  return std::get<Ellipsoid>(rep_);
}

int Body::dim() const {
  return is_polytope() ? std::get<VPolytope>(rep_).dim
                       : static_cast<int>(std::get<Ellipsoid>(rep_).center.size());
}

int Body::intrinsic_dim() const {
  if (is_polytope()) return std::get<VPolytope>(rep_).intrinsic_dim;
  const auto& e = std::get<Ellipsoid>(rep_);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e.shape);
  const double top = svd.singularValues()[0];
  if (top < 1e-14) return 0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-12 * top) ++r;
  return r;
}

// ---- constructors ----------------------------------------------------------

Body make_polytope(const std::vector<Eigen::VectorXd>& pts) {
  if (pts.empty()) fail(Errc::InvalidParams, "make_polytope: empty point set");
  const int n = static_cast<int>(pts.front().size());
  if (n != 2 && n != 3) fail(Errc::DimensionUnsupported, "make_polytope: ambient dim must be 2 or 3");
  for (const auto& p : pts) check_dim(p, n, "make_polytope: mixed point dimensions");

  const AffineFrame fr = affine_frame(pts);
  VPolytope P;
  P.dim = n;
  P.intrinsic_dim = fr.dim;

  if (fr.dim == 0) {
    P.vertices = {pts.front()};
    return Body(std::move(P));
  }

  if (fr.dim == n) {
    if (n == 2) {
      P.vertices = hull2d(pts);
    } else {
      // Restrict to hull corners first (cheap). Small corner sets get the
      // exact LP prune, which also drops corners sitting on hull edges or
      // facets without being extreme; large ones (finely sampled smooth
      // bodies, big Minkowski sums) keep the hull corners as-is, already in
      // lexicographic order.
      std::vector<Eigen::VectorXd> cand = pts;
      if (cand.size() > 16) {
        const Hull3d h = hull3d(cand);
        std::vector<char> used(h.vertices.size(), 0);
        for (const auto& t : h.triangles) used[t[0]] = used[t[1]] = used[t[2]] = 1;
        cand.clear();
        for (size_t i = 0; i < h.vertices.size(); ++i)
          if (used[i]) cand.push_back(h.vertices[i]);
      }
      P.vertices = cand.size() <= 96 ? prune_to_extreme(cand) : std::move(cand);
    }
    return Body(std::move(P));
  }

  if (fr.dim == 1) {
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    size_t imin = 0, imax = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      const double t = fr.basis.col(0).dot(pts[i] - fr.origin);
      if (t < tmin) { tmin = t; imin = i; }
      if (t > tmax) { tmax = t; imax = i; }
    }
    Eigen::VectorXd a = pts[imin], b = pts[imax];
    if (lex_less(b, a)) std::swap(a, b);
    P.vertices = {a, b};
    return Body(std::move(P));
  }

  // Planar set in R^3: hull in frame coordinates, lifted back to the plane.
  std::vector<Eigen::VectorXd> flat(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) flat[i] = fr.basis.transpose() * (pts[i] - fr.origin);
  const std::vector<Eigen::VectorXd> ring = hull2d(flat);
  P.vertices.reserve(ring.size());
  for (const auto& q : ring) P.vertices.push_back(fr.origin + fr.basis * q);
  return Body(std::move(P));
}

Body make_ellipsoid(const Eigen::VectorXd& center, const Eigen::MatrixXd& shape) {
  const int n = static_cast<int>(center.size());
  if (n != 2 && n != 3) fail(Errc::DimensionUnsupported, "make_ellipsoid: dim must be 2 or 3");
  if (shape.rows() != n || shape.cols() != n)
    fail(Errc::ArityMismatch, "make_ellipsoid: shape matrix size mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shape);
  const double smin = svd.singularValues()[n - 1];
  const double smax = svd.singularValues()[0];
  if (smin <= 1e-12 * std::max(1.0, smax))
    fail(Errc::InvalidParams, "make_ellipsoid: shape matrix is singular");
  return Body(Ellipsoid{center, shape});
}

Body make_ball(const Eigen::VectorXd& center, double radius) {
  if (radius <= 0.0) fail(Errc::InvalidParams, "make_ball: radius must be positive");
  const int n = static_cast<int>(center.size());
  return make_ellipsoid(center, radius * Eigen::MatrixXd::Identity(n, n));
}

Body make_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(lo.size());
  check_dim(hi, n, "make_box: corner dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (!(lo[i] < hi[i])) fail(Errc::InvalidParams, "make_box: lo must be strictly below hi");
  std::vector<Eigen::VectorXd> corners;
  corners.reserve(size_t(1) << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c[i] = (mask >> i & 1) ? hi[i] : lo[i];
    corners.push_back(c);
  }
  return make_polytope(corners);
}

Body polytopalize(const Body& ellipsoid_body, int m) {
  if (ellipsoid_body.is_polytope())
    fail(Errc::InvalidParams, "polytopalize expects an ellipsoid");
  const Ellipsoid& e = ellipsoid_body.ellipsoid();
  const int n = static_cast<int>(e.center.size());
  if (m < n + 1) fail(Errc::InvalidParams, "polytopalize: too few boundary points");
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(m);
  if (n == 2) {
    for (int k = 0; k < m; ++k) {
      const double a = 2.0 * kPi * k / m;
      pts.push_back(e.center + e.shape * Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
  } else {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < m; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / m;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * k;
      pts.push_back(e.center + e.shape * Eigen::Vector3d(r * std::cos(a), r * std::sin(a), z));
    }
  }
  return make_polytope(pts);
}

Body make_reuleaux(double width_value, int m) {
  if (width_value <= 0.0) fail(Errc::InvalidParams, "make_reuleaux: width must be positive");
  if (m < 3 || m % 3 != 0) fail(Errc::InvalidParams, "make_reuleaux: m must be a positive multiple of 3");
  const int k = m / 3;
  const double circum = width_value / std::sqrt(3.0);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(m);
  for (int i = 0; i < 3; ++i) {
    const double phi = kPi / 2.0 + 2.0 * kPi * i / 3.0;  // vertex direction
    const Eigen::Vector2d v(circum * std::cos(phi), circum * std::sin(phi));
    // Arc opposite vertex i: directions phi + [150, 210) degrees; step j = k
    // would land exactly on the next corner, which arc i+1 emits as j = 0.
    for (int j = 0; j < k; ++j) {
      const double a = phi + 5.0 * kPi / 6.0 + (kPi / 3.0) * j / k;
      pts.push_back(v + width_value * Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
  }
  return make_polytope(pts);
}

// ---- support machinery -----------------------------------------------------

double support(const Body& K, const Eigen::VectorXd& u) {
  check_dim(u, K.dim(), "support: direction dimension mismatch");
  if (u.norm() < kZeroDirTol) fail(Errc::InvalidDirection, "support: zero direction");
  if (K.is_polytope()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : K.polytope().vertices) best = std::max(best, u.dot(v));
    return best;
  }
  const Ellipsoid& e = K.ellipsoid();
  return e.center.dot(u) + (e.shape.transpose() * u).norm();
}

double width(const Body& K, const Eigen::VectorXd& u) {
  check_dim(u, K.dim(), "width: direction dimension mismatch");
  const double nu = u.norm();
  if (nu < kZeroDirTol) fail(Errc::InvalidDirection, "width: zero direction");
  const Eigen::VectorXd uh = u / nu;
  return support(K, uh) + support(K, -uh);
}

// ---- arithmetic -------------------------------------------------------------

Body minkowski_sum(const Body& A, const Body& B) {
  if (!A.is_polytope() || !B.is_polytope())
    fail(Errc::UnsupportedOperandPair, "minkowski_sum: both operands must be V-polytopes");
  if (A.dim() != B.dim()) fail(Errc::ArityMismatch, "minkowski_sum: dimension mismatch");
  const auto& va = A.polytope().vertices;
  const auto& vb = B.polytope().vertices;
  std::vector<Eigen::VectorXd> sums;
  sums.reserve(va.size() * vb.size());
  for (const auto& a : va)
    for (const auto& b : vb) sums.push_back(a + b);
  return make_polytope(sums);
}

Body scale_translate(const Body& K, double t, const Eigen::VectorXd& x) {
  check_dim(x, K.dim(), "scale_translate: shift dimension mismatch");
  if (std::abs(t) < 1e-15) fail(Errc::DegenerateScale, "scale_translate: zero scale");
  if (K.is_polytope()) {
    std::vector<Eigen::VectorXd> mapped;
    mapped.reserve(K.polytope().vertices.size());
    for (const auto& v : K.polytope().vertices) mapped.push_back(t * v + x);
    return make_polytope(mapped);
  }
  const Ellipsoid& e = K.ellipsoid();
  return Body(Ellipsoid{t * e.center + x, t * e.shape});
}

Body polar(const Body& K) {
  if (K.flat()) fail(Errc::DegenerateBody, "polar: body is flat");
  if (K.is_polytope()) {
    const HRep H = facet_hrep(K.polytope().vertices);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < H.offsets.size(); ++i) margin = std::min(margin, H.offsets[i]);
    if (margin <= eps_geo) fail(Errc::OriginNotInterior, "polar: origin not strictly interior");
    std::vector<Eigen::VectorXd> duals;
    duals.reserve(H.offsets.size());
    for (int i = 0; i < H.offsets.size(); ++i)
      duals.push_back(Eigen::VectorXd(H.normals.row(i).transpose() / H.offsets[i]));
    return make_polytope(duals);
  }
  const Ellipsoid& e = K.ellipsoid();
  if (interior_margin(K) <= eps_geo) fail(Errc::OriginNotInterior, "polar: origin not strictly interior");
  const int n = static_cast<int>(e.center.size());
  // Polar of { c + S u : |u| <= 1 } is the quadric y^T (SS^T - cc^T) y + 2<c,y> <= 1.
  Eigen::MatrixXd Q(n + 1, n + 1);
  Q.topLeftCorner(n, n) = e.shape * e.shape.transpose() - e.center * e.center.transpose();
  Q.topRightCorner(n, 1) = e.center;
  Q.bottomLeftCorner(1, n) = e.center.transpose();
  Q(n, n) = -1.0;
  return Body(ellipsoid_from_quadric(Q));
}

Body difference_body(const Body& K) {
  if (K.is_polytope()) {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(K.dim());
    return minkowski_sum(K, scale_translate(K, -1.0, zero));
  }
  const Ellipsoid& e = K.ellipsoid();
  return Body(Ellipsoid{Eigen::VectorXd::Zero(e.center.size()), 2.0 * e.shape});
}

// ---- projections and sections ------------------------------------------------

Body project_hyperplane(const Body& K, const Eigen::VectorXd& u) {
  check_dim(u, K.dim(), "project_hyperplane: direction dimension mismatch");
  const double nu = u.norm();
  if (nu < kZeroDirTol) fail(Errc::InvalidDirection, "project_hyperplane: zero direction");
  const Eigen::VectorXd uh = u / nu;
  const Eigen::MatrixXd P =
      Eigen::MatrixXd::Identity(K.dim(), K.dim()) - uh * uh.transpose();
  if (K.is_polytope()) {
    std::vector<Eigen::VectorXd> mapped;
    mapped.reserve(K.polytope().vertices.size());
    for (const auto& v : K.polytope().vertices) mapped.push_back(P * v);
    return make_polytope(mapped);
  }
  const Ellipsoid& e = K.ellipsoid();
  return Body(Ellipsoid{P * e.center, P * e.shape});
}

std::optional<Body> section_hyperplane(const Body& K, const Eigen::VectorXd& u, double beta) {
  if (!K.is_polytope())
    fail(Errc::UnsupportedOperandPair, "section_hyperplane: polytopes only");
  if (K.flat()) fail(Errc::DegenerateBody, "section_hyperplane: body is flat");
  check_dim(u, K.dim(), "section_hyperplane: direction dimension mismatch");
  if (u.norm() < kZeroDirTol) fail(Errc::InvalidDirection, "section_hyperplane: zero direction");

  const auto& verts = K.polytope().vertices;
  std::vector<double> s(verts.size());
  double smin = std::numeric_limits<double>::infinity(), smax = -smin;
  for (size_t i = 0; i < verts.size(); ++i) {
    s[i] = u.dot(verts[i]) - beta;
    smin = std::min(smin, s[i]);
    smax = std::max(smax, s[i]);
  }
  const double tol = eps_geo * u.norm() * coord_scale(verts);
  if (smin >= -tol || smax <= tol) return std::nullopt;  // misses the interior

  std::vector<Eigen::VectorXd> cut;
  auto cross_edge = [&](size_t i, size_t j) {
    if ((s[i] > tol && s[j] < -tol) || (s[i] < -tol && s[j] > tol)) {
      const double f = s[i] / (s[i] - s[j]);
      cut.push_back(verts[i] + f * (verts[j] - verts[i]));
    }
  };
  for (size_t i = 0; i < verts.size(); ++i)
    if (std::abs(s[i]) <= tol) cut.push_back(verts[i]);

  if (K.dim() == 2) {
    for (size_t i = 0; i < verts.size(); ++i) cross_edge(i, (i + 1) % verts.size());
  } else {
    // hull3d reorders its corner list, so evaluate crossings against it.
    const Hull3d h = hull3d(verts);
    std::vector<double> sh(h.vertices.size());
    for (size_t i = 0; i < h.vertices.size(); ++i) sh[i] = u.dot(h.vertices[i]) - beta;
    for (const auto& [a, b] : hull_edges(h)) {
      if ((sh[a] > tol && sh[b] < -tol) || (sh[a] < -tol && sh[b] > tol)) {
        const double f = sh[a] / (sh[a] - sh[b]);
        cut.push_back(h.vertices[a] + f * (h.vertices[b] - h.vertices[a]));
      }
    }
  }
  if (cut.size() < 2) return std::nullopt;
  Body sec = make_polytope(cut);
  if (sec.intrinsic_dim() < 1) return std::nullopt;
  return sec;
}

std::optional<Body> section_line(const Body& K, const Eigen::VectorXd& p,
                                 const Eigen::VectorXd& dir) {
  check_dim(p, K.dim(), "section_line: point dimension mismatch");
  check_dim(dir, K.dim(), "section_line: direction dimension mismatch");
  if (dir.norm() < kZeroDirTol) fail(Errc::InvalidDirection, "section_line: zero direction");
  if (K.flat()) fail(Errc::DegenerateBody, "section_line: body is flat");

  double lo, hi;
  if (K.is_polytope()) {
    const HRep H = hrep(K);
    lo = -std::numeric_limits<double>::infinity();
    hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < H.offsets.size(); ++i) {
      const double a = H.normals.row(i).dot(dir);
      const double b = H.offsets[i] - H.normals.row(i).dot(p);
      if (std::abs(a) <= kZeroDirTol * dir.norm()) {
        if (b < -eps_geo) return std::nullopt;  // line misses the slab entirely
      } else if (a > 0) {
        hi = std::min(hi, b / a);
      } else {
        lo = std::max(lo, b / a);
      }
    }
  } else {
    const Ellipsoid& e = K.ellipsoid();
    const Eigen::VectorXd w = e.shape.fullPivLu().solve(p - e.center);
    const Eigen::VectorXd q = e.shape.fullPivLu().solve(dir);
    const double A = q.squaredNorm(), B = w.dot(q), C = w.squaredNorm() - 1.0;
    const double disc = B * B - A * C;
    if (disc <= 0.0) return std::nullopt;
    lo = (-B - std::sqrt(disc)) / A;
    hi = (-B + std::sqrt(disc)) / A;
  }
  const double span_tol = eps_geo * std::max(1.0, std::abs(lo) + std::abs(hi));
  if (!(hi - lo > span_tol)) return std::nullopt;
  return make_polytope({Eigen::VectorXd(p + lo * dir), Eigen::VectorXd(p + hi * dir)});
}

// ---- inclusion machinery -------------------------------------------------------

std::optional<Eigen::VectorXd> translative_inclusion(const Body& A, const Body& B) {
  if (A.dim() != B.dim()) fail(Errc::ArityMismatch, "translative_inclusion: dimension mismatch");
  if (!B.is_polytope())
    fail(Errc::UnsupportedOperandPair, "translative_inclusion: container must be a V-polytope");
  if (B.flat()) fail(Errc::DegenerateBody, "translative_inclusion: container is flat");
  const HRep H = hrep(B);
  const int m = static_cast<int>(H.offsets.size());
  Eigen::VectorXd slack(m);
  for (int i = 0; i < m; ++i)
    slack[i] = H.offsets[i] - support(A, H.normals.row(i).transpose());
  const ChebyshevBall ball = chebyshev_ball(H.normals, slack);
  if (ball.radius < -eps_geo) return std::nullopt;
  return ball.center;
}

bool subset_of(const Body& A, const Body& B, double tol) {
  if (A.dim() != B.dim()) fail(Errc::ArityMismatch, "subset_of: dimension mismatch");
  if (B.is_polytope()) {
    if (B.flat()) fail(Errc::DegenerateBody, "subset_of: flat container");
    const HRep H = hrep(B);
    for (int i = 0; i < H.offsets.size(); ++i)
      if (support(A, H.normals.row(i).transpose()) > H.offsets[i] + tol) return false;
    return true;
  }
  if (A.is_polytope()) {
    for (const auto& v : A.polytope().vertices)
      if (!contains(B, v, tol)) return false;
    return true;
  }
  // Ellipsoid in ellipsoid: support comparison over the direction grid (an
  // estimate; exact containment has no finite certificate here).
  for (const auto& u : default_direction_grid(A.dim()))
    if (support(A, u) > support(B, u) + tol) return false;
  return true;
}

bool contains(const Body& K, const Eigen::VectorXd& x, double tol) {
  check_dim(x, K.dim(), "contains: point dimension mismatch");
  if (K.is_polytope()) {
    const auto& verts = K.polytope().vertices;
    if (K.intrinsic_dim() == 0) return (x - verts[0]).norm() <= tol;
    if (!K.flat()) {
      const HRep H = hrep(K);
      for (int i = 0; i < H.offsets.size(); ++i)
        if (H.normals.row(i).dot(x) > H.offsets[i] + tol) return false;
      return true;
    }
    const AffineFrame fr = affine_frame(verts);
    const Eigen::VectorXd r = x - fr.origin;
    const Eigen::VectorXd q = fr.basis.transpose() * r;
    if ((r - fr.basis * q).norm() > tol) return false;
    if (fr.dim == 1) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& v : verts) {
        const double t = fr.basis.col(0).dot(v - fr.origin);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      return q[0] >= lo - tol && q[0] <= hi + tol;
    }
    std::vector<Eigen::VectorXd> flat(verts.size());
    for (size_t i = 0; i < verts.size(); ++i)
      flat[i] = fr.basis.transpose() * (verts[i] - fr.origin);
    return contains(make_polytope(flat), q, tol);
  }
  const Ellipsoid& e = K.ellipsoid();
  if (!K.flat()) return (e.shape.fullPivLu().solve(x - e.center)).norm() <= 1.0 + tol;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e.shape, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd q = svd.solve(x - e.center);
  if ((e.shape * q - (x - e.center)).norm() > tol) return false;
  return q.norm() <= 1.0 + tol;
}

double gauge(const Body& B, const Eigen::VectorXd& v) {
  check_dim(v, B.dim(), "gauge: point dimension mismatch");
  if (interior_margin(B) <= eps_geo) fail(Errc::OriginNotInterior, "gauge: origin not strictly interior");
  if (B.is_polytope()) {
    const HRep H = hrep(B);
    double g = 0.0;
    for (int i = 0; i < H.offsets.size(); ++i)
      g = std::max(g, H.normals.row(i).dot(v) / H.offsets[i]);
    return g;
  }
  const Ellipsoid& e = B.ellipsoid();
  const Eigen::VectorXd a = e.shape.fullPivLu().solve(v);
  const double an = a.squaredNorm();
  if (an < 1e-30) return 0.0;
  const Eigen::VectorXd b = e.shape.fullPivLu().solve(e.center);
  const double ab = a.dot(b);
  const double mu = (ab + std::sqrt(ab * ab + an * (1.0 - b.squaredNorm()))) / an;
  return 1.0 / mu;
}

double max_scaling(const Body& A, const Body& B) {
  if (A.dim() != B.dim()) fail(Errc::ArityMismatch, "max_scaling: dimension mismatch");
  if (!A.is_polytope()) fail(Errc::UnsupportedOperandPair, "max_scaling: scaled body must be a V-polytope");
  double g = 0.0;
  for (const auto& v : A.polytope().vertices) g = std::max(g, gauge(B, v));
  if (g <= 1e-15) fail(Errc::DegenerateBody, "max_scaling: scaled body has no extent");
  return 1.0 / g;
}

double hausdorff_distance(const Body& A, const Body& B, int grid_count) {
  if (A.dim() != B.dim()) fail(Errc::ArityMismatch, "hausdorff_distance: dimension mismatch");
  const std::vector<Eigen::VectorXd> grid =
      grid_count > 0 ? direction_grid(A.dim(), grid_count) : default_direction_grid(A.dim());
  double d = 0.0;
  for (const auto& u : grid) d = std::max(d, std::abs(support(A, u) - support(B, u)));
  return d;
}

// ---- assorted helpers ----------------------------------------------------------

const std::vector<Eigen::VectorXd>& vertices(const Body& K) { return K.polytope().vertices; }

HRep hrep(const Body& K) {
  if (!K.is_polytope()) fail(Errc::UnsupportedOperandPair, "hrep: polytopes only");
  if (K.flat()) fail(Errc::DegenerateBody, "hrep: body is flat");
  return facet_hrep(K.polytope().vertices);
}

double interior_margin(const Body& K) {
  if (K.flat()) return -1.0;  // a flat body has empty interior
  if (K.is_polytope()) {
    const HRep H = hrep(K);
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < H.offsets.size(); ++i) m = std::min(m, H.offsets[i]);
    return m;
  }
  const Ellipsoid& e = K.ellipsoid();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e.shape);
  const double smin = svd.singularValues()[svd.singularValues().size() - 1];
  const double reach = e.shape.fullPivLu().solve(e.center).norm();
  return (1.0 - reach) * smin;
}

double distance_to(const Body& K, const Eigen::VectorXd& x) {
  check_dim(x, K.dim(), "distance_to: point dimension mismatch");
  if (K.is_polytope()) {
    const auto& verts = K.polytope().vertices;
    if (K.intrinsic_dim() == 0) return (x - verts[0]).norm();
    if (K.intrinsic_dim() == 1) return point_segment_distance(x, verts[0], verts[1]);
    if (K.dim() == 2) {
      if (contains(K, x, 0.0)) return 0.0;
      double d = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < verts.size(); ++i)
        d = std::min(d, point_segment_distance(x, verts[i], verts[(i + 1) % verts.size()]));
      return d;
    }
    if (!K.flat()) {
      if (contains(K, x, 0.0)) return 0.0;
      const Hull3d h = hull3d(verts);
      double d = std::numeric_limits<double>::infinity();
      for (const auto& t : h.triangles)
        d = std::min(d, point_triangle_distance(x, h.vertices[t[0]], h.vertices[t[1]],
                                                h.vertices[t[2]]));
      return d;
    }
    // Flat polygon in R^3: fan triangulation around the first ring vertex.
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < verts.size(); ++i)
      d = std::min(d, point_triangle_distance(x, verts[0], verts[i], verts[i + 1]));
    return d;
  }
  const Ellipsoid& e = K.ellipsoid();
  double r = 0.0;
  if (!uniform_ball_shape(e.shape, &r))
    fail(Errc::UnsupportedOperandPair, "distance_to: ellipsoid distance supported for balls only");
  return std::max(0.0, (x - e.center).norm() - r);
}

Eigen::VectorXd vertex_centroid(const Body& K) {
  if (!K.is_polytope()) return K.ellipsoid().center;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(K.dim());
  for (const auto& v : K.polytope().vertices) c += v;
  return c / double(K.polytope().vertices.size());
}

bool is_symmetric(const Body& K, double tol) {
  if (!K.is_polytope()) return K.ellipsoid().center.norm() <= tol;
  const auto& verts = K.polytope().vertices;
  for (const auto& v : verts) {
    bool matched = false;
    for (const auto& w : verts)
      if ((v + w).norm() <= tol * std::max(1.0, v.norm())) { matched = true; break; }
    if (!matched) return false;
  }
  return true;
}

Eigen::MatrixXd ellipsoid_quadric(const Ellipsoid& e) {
  const int n = static_cast<int>(e.center.size());
  const Eigen::MatrixXd M =
      (e.shape * e.shape.transpose()).fullPivLu().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd Q(n + 1, n + 1);
  Q.topLeftCorner(n, n) = M;
  Q.topRightCorner(n, 1) = -M * e.center;
  Q.bottomLeftCorner(1, n) = (-M * e.center).transpose();
  Q(n, n) = e.center.dot(M * e.center) - 1.0;
  if (Q(n, n) < -1e-12) Q /= -Q(n, n);  // origin interior: pin the constant term to -1
  return Q;
}

Ellipsoid ellipsoid_from_quadric(Eigen::MatrixXd Q) {
  const int n = static_cast<int>(Q.rows()) - 1;
  if (n < 1 || Q.cols() != n + 1) fail(Errc::InvalidParams, "ellipsoid_from_quadric: bad matrix size");
  Q = ((Q + Q.transpose()) / 2.0).eval();
  Eigen::MatrixXd A = Q.topLeftCorner(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.eigenvalues()[n - 1] < 0.0) {  // whole form written with the opposite sign
    Q = -Q;
    A = -A;
    es.compute(A);
  }
  const double lam_min = es.eigenvalues()[0], lam_max = es.eigenvalues()[n - 1];
  if (lam_min <= 1e-12 * std::max(1.0, lam_max))
    fail(Errc::InvalidParams, "ellipsoid_from_quadric: quadric is not a bounded ellipsoid");
  const Eigen::VectorXd b = Q.topRightCorner(n, 1);
  const Eigen::VectorXd y0 = -A.fullPivLu().solve(b);
  const double s = y0.dot(A * y0) - Q(n, n);
  if (s <= 0.0) fail(Errc::InvalidParams, "ellipsoid_from_quadric: empty quadric body");
  return Ellipsoid{y0, sqrt_inverse_free_symmetric(A / s, -0.5)};
}

}  // namespace incgeo
