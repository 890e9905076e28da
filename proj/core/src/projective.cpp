#include "incgeo/projective.hpp"

#include <cmath>

#include "incgeo/rng.hpp"

namespace incgeo {
namespace {

int map_dim(const FLMap& F) { return static_cast<int>(F.mat.rows()) - 1; }

Eigen::VectorXd hyperplane_normal(const FLMap& F) {
  const int n = map_dim(F);
  return F.mat.bottomLeftCorner(1, n).transpose();
}

}  // namespace

FLMap make_flmap(Eigen::MatrixXd mat, int domain_sign) {
  const int n = static_cast<int>(mat.rows()) - 1;
  if (n < 1 || mat.cols() != n + 1) fail(Errc::InvalidParams, "make_flmap: bad matrix size");
  if (domain_sign != 1 && domain_sign != -1)
    fail(Errc::InvalidParams, "make_flmap: domain_sign must be +1 or -1");
  const double scale = mat.cwiseAbs().maxCoeff();
  if (std::abs(mat.determinant()) <= 1e-12 * std::pow(std::max(scale, 1e-300), n + 1))
    fail(Errc::InvalidParams, "make_flmap: matrix is singular");
  return FLMap{std::move(mat), domain_sign};
}

FLMap flmap_from_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || b.size() != n) fail(Errc::ArityMismatch, "flmap_from_affine: size mismatch");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = A;
  M.topRightCorner(n, 1) = b;
  M(n, n) = 1.0;
  return make_flmap(std::move(M), +1);
}

FLMap canonical_f0(int n, int domain_sign) {
  if (n < 1) fail(Errc::InvalidParams, "canonical_f0: dimension must be positive");
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n + 1, n + 1);
  M(n, 0) = 1.0;
  M(n, n) = -1.0;
  return make_flmap(std::move(M), domain_sign);
}

FLMap compose(const FLMap& F, const FLMap& G) {
  if (F.mat.rows() != G.mat.rows()) fail(Errc::ArityMismatch, "compose: dimension mismatch");
  return make_flmap(F.mat * G.mat, F.domain_sign * G.domain_sign);
}

FLMap inverse(const FLMap& F) { return make_flmap(F.mat.inverse(), F.domain_sign); }

Eigen::VectorXd apply_point(const FLMap& F, const Eigen::VectorXd& x) {
  const int n = map_dim(F);
  if (x.size() != n) fail(Errc::ArityMismatch, "apply_point: dimension mismatch");
  const double w = hyperplane_normal(F).dot(x) + F.mat(n, n);
  if (std::abs(w) <= eps_geo) fail(Errc::DomainViolation, "apply_point: point on the defining hyperplane");
  return (F.mat.topLeftCorner(n, n) * x + F.mat.topRightCorner(n, 1)) / w;
}

bool admissible(const FLMap& F, const Body& K) {
  const int n = map_dim(F);
  if (K.dim() != n) fail(Errc::ArityMismatch, "admissible: dimension mismatch");
  const Eigen::VectorXd c = hyperplane_normal(F);
  const double d = F.mat(n, n);
  if (c.norm() < 1e-14) return F.domain_sign * d > eps_geo;  // affine: one side is everything
  // min over K of sign*(<x,c> + d) = -h_K(-sign c) + sign d
  const double s = static_cast<double>(F.domain_sign);
  return -support(K, -s * c) + s * d >= eps_geo;
}

Body apply_body(const FLMap& F, const Body& K) {
  if (!admissible(F, K)) fail(Errc::DomainViolation, "apply_body: body crosses the defining hyperplane");
  if (K.is_polytope()) {
    std::vector<Eigen::VectorXd> mapped;
    mapped.reserve(K.polytope().vertices.size());
    for (const auto& v : K.polytope().vertices) mapped.push_back(apply_point(F, v));
    return make_polytope(mapped);
  }
  if (K.flat()) fail(Errc::UnsupportedOperandPair, "apply_body: flat ellipsoids unsupported");
  const Eigen::MatrixXd Minv = F.mat.inverse();
  const Eigen::MatrixXd Q = Minv.transpose() * ellipsoid_quadric(K.ellipsoid()) * Minv;
  return Body(ellipsoid_from_quadric(Q));
}

Body body_from_params(const EllipsoidParams& p, int n) {
  if (p.R <= 0.0 || p.r <= 0.0) fail(Errc::InvalidParams, "body_from_params: nonpositive semiaxes");
  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  center[0] = 1.0 - p.delta - p.R;
  Eigen::MatrixXd shape = p.r * Eigen::MatrixXd::Identity(n, n);
  shape(0, 0) = p.R;
  return make_ellipsoid(center, shape);
}

BallImageParams ball_image_params(double R, double delta) {
  if (R <= 0.0 || delta <= 0.0) fail(Errc::InvalidParams, "ball_image_params: nonpositive inputs");
  BallImageParams out;
  out.image.R = R / (delta * (delta + 2.0 * R));
  out.image.r = R / std::sqrt(delta * (delta + 2.0 * R));
  out.image.delta = 1.0 / (delta + 2.0 * R);
  out.inner = std::min(out.image.R, out.image.r);
  out.outer = std::max(out.image.R, out.image.r);
  return out;
}

CanonicalDecomposition canonical_decompose(const FLMap& F, const Eigen::VectorXd& x0) {
  const int n = map_dim(F);
  if (x0.size() != n) fail(Errc::ArityMismatch, "canonical_decompose: base point dimension mismatch");
  const Eigen::VectorXd c = hyperplane_normal(F);
  const double scale = std::max(1.0, F.mat.cwiseAbs().maxCoeff());
  if (c.norm() <= 1e-12 * scale)
    fail(Errc::AffineMapHasNoCanonicalForm, "canonical_decompose: map is affine");
  const double dprime = c.dot(x0) + F.mat(n, n);
  if (F.domain_sign * dprime <= eps_geo)
    fail(Errc::DomainViolation, "canonical_decompose: base point outside the domain");

  const Eigen::MatrixXd A = F.mat.topLeftCorner(n, n);
  const Eigen::VectorXd b = F.mat.topRightCorner(n, 1);
  const Eigen::VectorXd y0 = (A * x0 + b) / dprime;

  // Conjugating by the translations x0, y0 gives [[A - y0 c^T, 0], [c^T, d']].
  // Pick C sending e1 to -d' c/|c|^2 (and c-perp to c-perp), which turns the
  // bottom row into -d'(e1^T | -1), the canonical-map pattern; B then clears
  // the top-left block to -d' I.
  Eigen::MatrixXd C(n, n);
  C.col(0) = -dprime / c.squaredNorm() * c;
  if (n > 1) C.rightCols(n - 1) = orthonormal_frame(c).rightCols(n - 1);
  const Eigen::MatrixXd core = (A - y0 * c.transpose()) * C;
  const Eigen::MatrixXd B = -dprime * core.inverse();

  CanonicalDecomposition out{B, C, x0, y0};

  // The identity is algebraic; evaluate it at random points anyway so a
  // degenerate matrix cannot slip through.
  const FLMap f0 = canonical_f0(n);
  CounterRng rng(0x1d5a11u);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-0.5, 0.5);
    const Eigen::VectorXd lhs = B * (apply_point(F, C * x + x0) - y0);
    const Eigen::VectorXd rhs = apply_point(f0, x);
    if ((lhs - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
      fail(Errc::MeasuredComparisonFailed, "canonical_decompose: verification residual too large");
  }
  return out;
}

double polarity_identity_check(const Body& K) {
  const int n = K.dim();
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
  const Body lhs = apply_body(canonical_f0(n), K);
  const Body rhs = polar(scale_translate(polar(K), -1.0, e1));
  return hausdorff_distance(lhs, rhs);
}

}  // namespace incgeo
