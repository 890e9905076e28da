#include "incgeo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "incgeo/rng.hpp"

namespace incgeo {
namespace {

constexpr double kPi = 3.14159265358979323846;

double ring_area(const std::vector<Eigen::VectorXd>& ring) {
  double twice = 0.0;
  for (size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    twice += a[0] * b[1] - b[0] * a[1];
  }
  return std::abs(twice) / 2.0;
}

double ring_perimeter(const std::vector<Eigen::VectorXd>& ring) {
  double p = 0.0;
  for (size_t i = 0; i < ring.size(); ++i)
    p += (ring[(i + 1) % ring.size()] - ring[i]).norm();
  return p;
}

double hull_volume(const Hull3d& h) {
  double six = 0.0;
  for (const auto& t : h.triangles) {
    const Eigen::Vector3d a = h.vertices[t[0]], b = h.vertices[t[1]], c = h.vertices[t[2]];
    six += a.cross(b).dot(c);
  }
  return std::abs(six) / 6.0;
}

double hull_surface(const Hull3d& h) {
  double s = 0.0;
  for (const auto& t : h.triangles) {
    const Eigen::Vector3d a = h.vertices[t[0]], b = h.vertices[t[1]], c = h.vertices[t[2]];
    s += (Eigen::Vector3d(b - a)).cross(c - a).norm() / 2.0;
  }
  return s;
}

// Total edge curvature: sum over hull edges of length times exterior dihedral
// angle. Coplanar neighbors contribute zero, so the triangulated facets need
// no merging.
double hull_edge_curvature(const Hull3d& h) {
  std::vector<Eigen::Vector3d> normals(h.triangles.size());
  for (size_t i = 0; i < h.triangles.size(); ++i) {
    const auto& t = h.triangles[i];
    const Eigen::Vector3d a = h.vertices[t[0]], b = h.vertices[t[1]], c = h.vertices[t[2]];
    normals[i] = (Eigen::Vector3d(b - a)).cross(c - a);
  }
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (size_t i = 0; i < h.triangles.size(); ++i) {
    const auto& t = h.triangles[i];
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edge_faces[{a, b}].push_back(static_cast<int>(i));
    }
  }
  double m = 0.0;
  for (const auto& [edge, faces] : edge_faces) {
    if (faces.size() != 2) continue;
    Eigen::Vector3d n1 = normals[faces[0]], n2 = normals[faces[1]];
    if (n1.norm() < 1e-14 || n2.norm() < 1e-14) continue;
    n1.normalize();
    n2.normalize();
    const double theta = std::atan2(n1.cross(n2).norm(), n1.dot(n2));
    m += (h.vertices[edge.second] - h.vertices[edge.first]).norm() * theta;
  }
  return m / 2.0;
}

bool is_ball(const Body& K, double* radius) {
  if (K.is_polytope()) return false;
  const auto& e = K.ellipsoid();
  const int n = static_cast<int>(e.center.size());
  const double r = e.shape(0, 0);
  if (r <= 0.0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(e.shape(i, j) - (i == j ? r : 0.0)) > 1e-12 * std::max(1.0, r)) return false;
  *radius = r;
  return true;
}

Eigen::VectorXd support_box_lo(const Body& K) {
  const int n = K.dim();
  Eigen::VectorXd lo(n);
  for (int i = 0; i < n; ++i) lo[i] = -support(K, -Eigen::VectorXd::Unit(n, i));
  return lo;
}

Eigen::VectorXd support_box_hi(const Body& K) {
  const int n = K.dim();
  Eigen::VectorXd hi(n);
  for (int i = 0; i < n; ++i) hi[i] = support(K, Eigen::VectorXd::Unit(n, i));
  return hi;
}

McEstimate mc_indicator(const Body& K, double pad, std::size_t n_samples, std::uint64_t seed,
                        const std::function<bool(const Eigen::VectorXd&)>& inside) {
  if (n_samples == 0) fail(Errc::InvalidParams, "monte carlo: need at least one sample");
  const int n = K.dim();
  const Eigen::VectorXd lo = support_box_lo(K).array() - pad;
  const Eigen::VectorXd hi = support_box_hi(K).array() + pad;
  double box = 1.0;
  for (int i = 0; i < n; ++i) box *= std::max(0.0, hi[i] - lo[i]);
  McEstimate est;
  est.samples = n_samples;
  if (box <= 0.0) return est;
  CounterRng rng(seed);
  std::size_t hits = 0;
  Eigen::VectorXd x(n);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    if (inside(x)) ++hits;
  }
  const double p = double(hits) / double(n_samples);
  est.value = box * p;
  est.stderr_est = box * std::sqrt(p * (1.0 - p) / double(n_samples));
  return est;
}

// Point membership / distance with the facet data hoisted out of the loop.
struct CachedShape {
  bool is_poly = false;
  bool flat = false;
  HRep H;
  std::vector<Eigen::VectorXd> ring;  // 2D
  Hull3d hull;                        // 3D
  Eigen::VectorXd center;
  double radius = 0.0;

  explicit CachedShape(const Body& K) {
    is_poly = K.is_polytope();
    flat = K.flat();
    if (is_poly) {
      if (!flat) H = hrep(K);
      if (K.dim() == 2) ring = K.polytope().vertices;
      else hull = hull3d(K.polytope().vertices);
    } else {
      if (!is_ball(K, &radius))
        fail(Errc::UnsupportedOperandPair, "outer parallel sampling: ellipsoids must be balls");
      center = K.ellipsoid().center;
    }
  }

  bool inside(const Eigen::VectorXd& x) const {
    if (!is_poly) return (x - center).norm() <= radius;
    if (flat) return false;  // measure-zero slice, distance() owns these
    for (int i = 0; i < H.offsets.size(); ++i)
      if (H.normals.row(i).dot(x) > H.offsets[i]) return false;
    return true;
  }

  double distance(const Eigen::VectorXd& x) const {
    if (!is_poly) return std::max(0.0, (x - center).norm() - radius);
    if (inside(x)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    if (!ring.empty()) {
      for (size_t i = 0; i < ring.size(); ++i) {
        const Eigen::VectorXd& a = ring[i];
        const Eigen::VectorXd& b = ring[(i + 1) % ring.size()];
        const Eigen::VectorXd e = b - a;
        const double len2 = e.squaredNorm();
        const double t = len2 < 1e-30 ? 0.0 : std::clamp((x - a).dot(e) / len2, 0.0, 1.0);
        d = std::min(d, (x - (a + t * e)).norm());
      }
      return d;
    }
    for (const auto& t : hull.triangles) {
      const Eigen::Vector3d a = hull.vertices[t[0]], b = hull.vertices[t[1]],
                            c = hull.vertices[t[2]];
      const Eigen::Vector3d p = x;
      const Eigen::Vector3d n = (b - a).cross(c - a);
      const double n2 = n.squaredNorm();
      double dt;
      if (n2 < 1e-30) {
        dt = std::numeric_limits<double>::infinity();
      } else {
        const Eigen::Vector3d q = p - n * (n.dot(p - a) / n2);
        const bool in0 = (b - a).cross(q - a).dot(n) >= -1e-12 * n2;
        const bool in1 = (c - b).cross(q - b).dot(n) >= -1e-12 * n2;
        const bool in2 = (a - c).cross(q - c).dot(n) >= -1e-12 * n2;
        dt = (in0 && in1 && in2) ? std::abs(n.dot(p - a)) / std::sqrt(n2)
                                 : std::numeric_limits<double>::infinity();
      }
      auto seg = [&](const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
        const Eigen::Vector3d e = v - u;
        const double len2 = e.squaredNorm();
        const double t2 = len2 < 1e-30 ? 0.0 : std::clamp((p - u).dot(e) / len2, 0.0, 1.0);
        return (p - (u + t2 * e)).norm();
      };
      d = std::min({d, dt, seg(a, b), seg(b, c), seg(a, c)});
    }
    return d;
  }
};

}  // namespace

double unit_ball_volume(int n) {
  if (n == 2) return kPi;
  if (n == 3) return 4.0 * kPi / 3.0;
  fail(Errc::DimensionUnsupported, "unit_ball_volume: dim must be 2 or 3");
}

double volume(const Body& K) {
  if (K.flat()) return 0.0;
  if (K.is_polytope()) {
    if (K.dim() == 2) return ring_area(K.polytope().vertices);
    return hull_volume(hull3d(K.polytope().vertices));
  }
  const auto& e = K.ellipsoid();
  return std::abs(e.shape.determinant()) * unit_ball_volume(K.dim());
}

double intrinsic_measure(const Body& K) {
  const int k = K.intrinsic_dim();
  if (k == 0) return 1.0;
  if (k == K.dim()) return volume(K);
  if (K.is_polytope()) {
    const auto& verts = K.polytope().vertices;
    if (k == 1) return (verts[1] - verts[0]).norm();
    const AffineFrame fr = affine_frame(verts);
    std::vector<Eigen::VectorXd> flat(verts.size());
    for (size_t i = 0; i < verts.size(); ++i)
      flat[i] = fr.basis.transpose() * (verts[i] - fr.origin);
    return ring_area(flat);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K.ellipsoid().shape);
  double prod = 1.0;
  const double top = svd.singularValues()[0];
  for (int i = 0; i < k; ++i) prod *= svd.singularValues()[i];
  return (top < 1e-14) ? 0.0 : prod * (k == 1 ? 2.0 : unit_ball_volume(k));
}

double surface_area(const Body& K) {
  if (K.is_polytope()) {
    const auto& verts = K.polytope().vertices;
    if (K.intrinsic_dim() == 0) return 0.0;
    if (K.dim() == 2) return ring_perimeter(verts);
    if (K.flat()) return 2.0 * intrinsic_measure(K);
    return hull_surface(hull3d(verts));
  }
  double r = 0.0;
  if (is_ball(K, &r)) return K.dim() == 2 ? 2.0 * kPi * r : 4.0 * kPi * r * r;
  if (K.flat()) return 2.0 * intrinsic_measure(K);
  return surface_area(polytopalize(K, K.dim() == 2 ? 4096 : 2048));
}

double mixed_volume(const std::vector<Body>& bodies) {
  if (bodies.empty()) fail(Errc::ArityMismatch, "mixed_volume: no operands");
  const int n = bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n)
    fail(Errc::ArityMismatch, "mixed_volume: arity must equal the ambient dimension");
  for (const auto& b : bodies) {
    if (b.dim() != n) fail(Errc::ArityMismatch, "mixed_volume: dimension mismatch");
    if (!b.is_polytope())
      fail(Errc::UnsupportedOperandPair, "mixed_volume: V-polytope operands only");
  }
  const double factorial = (n == 2) ? 2.0 : 6.0;
  double acc = 0.0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::optional<Body> sum;
    int bits = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++bits;
      sum = sum ? minkowski_sum(*sum, bodies[i]) : bodies[i];
    }
    const double sign = ((n + bits) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * volume(*sum);
  }
  return acc / factorial;
}

double mixed_area(const Body& K, const Body& L) {
  if (K.dim() != 2 || L.dim() != 2)
    fail(Errc::DimensionUnsupported, "mixed_area: planar bodies only");
  if (!K.is_polytope() || !L.is_polytope())
    fail(Errc::UnsupportedOperandPair, "mixed_area: V-polytope operands only");
  return (volume(minkowski_sum(K, L)) - volume(K) - volume(L)) / 2.0;
}

std::vector<double> quermassintegrals(const Body& K) {
  const int n = K.dim();
  if (n == 2) return {volume(K), surface_area(K) / 2.0, kPi};
  double r = 0.0;
  if (is_ball(K, &r))
    return {4.0 * kPi / 3.0 * r * r * r, 4.0 * kPi / 3.0 * r * r, 4.0 * kPi / 3.0 * r,
            4.0 * kPi / 3.0};
  if (K.flat()) fail(Errc::DegenerateBody, "quermassintegrals: flat 3D bodies unsupported");
  if (!K.is_polytope()) return quermassintegrals(polytopalize(K, 2048));
  const Hull3d h = hull3d(K.polytope().vertices);
  return {hull_volume(h), hull_surface(h) / 3.0, hull_edge_curvature(h) / 3.0, 4.0 * kPi / 3.0};
}

double steiner_volume(const Body& K, double t) {
  if (t < 0.0) fail(Errc::InvalidParams, "steiner_volume: t must be nonnegative");
  const std::vector<double> w = quermassintegrals(K);
  const int n = K.dim();
  double acc = 0.0, binom = 1.0, power = 1.0;
  for (int j = 0; j <= n; ++j) {
    acc += binom * w[std::size_t(j)] * power;
    binom = binom * double(n - j) / double(j + 1);
    power *= t;
  }
  return acc;
}

McEstimate mc_volume(const Body& K, std::size_t n_samples, std::uint64_t seed) {
  if (K.flat()) return McEstimate{0.0, 0.0, n_samples};
  const CachedShape shape(K);
  return mc_indicator(K, 0.0, n_samples, seed,
                      [&](const Eigen::VectorXd& x) { return shape.inside(x); });
}

McEstimate mc_outer_volume(const Body& K, double t, std::size_t n_samples, std::uint64_t seed) {
  if (t < 0.0) fail(Errc::InvalidParams, "mc_outer_volume: negative radius");
  if (K.flat() && K.dim() == 3)
    fail(Errc::DegenerateBody, "mc_outer_volume: flat 3D bodies unsupported");
  const CachedShape shape(K);
  return mc_indicator(K, t, n_samples, seed,
                      [&](const Eigen::VectorXd& x) { return shape.distance(x) <= t; });
}

}  // namespace incgeo
