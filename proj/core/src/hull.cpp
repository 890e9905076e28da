#include "incgeo/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "incgeo/errors.hpp"
#include "incgeo/lp.hpp"

namespace incgeo {
namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

double coord_scale(const std::vector<Eigen::VectorXd>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

double cross2(const Eigen::VectorXd& o, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

}  // namespace

std::vector<Eigen::VectorXd> hull2d(std::vector<Eigen::VectorXd> pts) {
  if (pts.empty()) return {};
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                          return (a - b).norm() < 1e-12;
                        }),
            pts.end());
  const int n = int(pts.size());
  if (n <= 2) return pts;
  // Turn tolerance: a point within eps_geo of the chord is treated collinear
  // and dropped, which keeps the vertex list irredundant.
  const double tol = eps_geo * coord_scale(pts);

  std::vector<Eigen::VectorXd> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= tol) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {  // upper chain
    while (k >= lo && cross2(h[k - 2], h[k - 1], pts[i]) <= tol) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;  // CCW from the lex-min point
}

AffineFrame affine_frame(const std::vector<Eigen::VectorXd>& pts) {
  AffineFrame fr;
  if (pts.empty()) fail(Errc::DegenerateBody, "empty point set");
  const int n = int(pts[0].size());
  fr.origin = Eigen::VectorXd::Zero(n);
  for (const auto& p : pts) fr.origin += p;
  fr.origin /= double(pts.size());

  Eigen::MatrixXd D(int(pts.size()), n);
  for (int i = 0; i < int(pts.size()); ++i) D.row(i) = (pts[i] - fr.origin).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinV);
  const double tol = eps_geo * std::max(1.0, coord_scale(pts)) * std::sqrt(double(pts.size()));
  int k = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++k;
  fr.dim = k;
  fr.basis = svd.matrixV().leftCols(k);
  return fr;
}

std::vector<Eigen::VectorXd> prune_to_extreme(const std::vector<Eigen::VectorXd>& pts) {
  std::vector<Eigen::VectorXd> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                             return (a - b).norm() < 1e-12;
                           }),
               sorted.end());
  const int m = int(sorted.size());
  if (m <= 2) return sorted;
  const int n = int(sorted[0].size());
  const double scale = coord_scale(sorted);

  // v is extreme iff some direction u separates it from the rest:
  //   max t  s.t.  <u, w - v> + t <= 0 for all w != v,  |u_j| <= 1.
  std::vector<Eigen::VectorXd> keep;
  for (int v = 0; v < m; ++v) {
    Eigen::MatrixXd A(m - 1 + 2 * n, n + 1);
    Eigen::VectorXd b(m - 1 + 2 * n);
    int r = 0;
    for (int w = 0; w < m; ++w) {
      if (w == v) continue;
      A.block(r, 0, 1, n) = (sorted[w] - sorted[v]).transpose();
      A(r, n) = 1.0;
      b(r) = 0.0;
      ++r;
    }
    for (int j = 0; j < n; ++j) {
      A.row(r).setZero(); A(r, j) = 1.0;  A(r, n) = 0.0; b(r) = 1.0; ++r;
      A.row(r).setZero(); A(r, j) = -1.0; A(r, n) = 0.0; b(r) = 1.0; ++r;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c(n) = 1.0;
    LpResult lp = lp_maximize(A, b, c);
    if (lp.status == LpResult::Status::Optimal && lp.value > eps_geo * std::max(1.0, scale))
      keep.push_back(sorted[v]);
  }
  return keep;
}

Hull3d hull3d(const std::vector<Eigen::VectorXd>& input) {
  std::vector<Eigen::VectorXd> pts = input;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                          return (a - b).norm() < 1e-12;
                        }),
            pts.end());
  const int n = int(pts.size());
  if (n < 4) fail(Errc::DegenerateBody, "3D hull needs at least 4 distinct points");
  const double scale = coord_scale(pts);
  const double vis_tol = 1e-10 * std::max(1.0, scale);

  // Initial simplex: lex-min, farthest point, farthest from their line,
  // farthest from their plane.
  int i0 = 0;
  int i1 = -1;
  double best = -1.0;
  for (int i = 1; i < n; ++i) {
    double d = (pts[i] - pts[i0]).norm();
    if (d > best) { best = d; i1 = i; }
  }
  if (best < 1e-12) fail(Errc::DegenerateBody, "all points coincide");
  Eigen::Vector3d e0 = (pts[i1] - pts[i0]).normalized();
  int i2 = -1;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d d = pts[i] - pts[i0];
    double h = (d - d.dot(e0) * e0).norm();
    if (h > best) { best = h; i2 = i; }
  }
  if (best <= vis_tol) fail(Errc::DegenerateBody, "point set is collinear");
  Eigen::Vector3d nrm = Eigen::Vector3d(e0).cross(Eigen::Vector3d(pts[i2] - pts[i0])).normalized();
  int i3 = -1;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    double h = std::abs(nrm.dot(pts[i] - pts[i0]));
    if (h > best) { best = h; i3 = i; }
  }
  if (best <= vis_tol) fail(Errc::DegenerateBody, "point set is coplanar");

  struct Face {
    int a, b, c;
    Eigen::Vector3d normal;  // outward, unit (zero for degenerate slivers)
    double offset;
    bool alive;
  };
  std::vector<Face> faces;
  Eigen::Vector3d inner = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;

  auto make_face = [&](int a, int b, int c) {
    Face f{a, b, c, Eigen::Vector3d::Zero(), 0.0, true};
    Eigen::Vector3d u = pts[b] - pts[a], v = pts[c] - pts[a];
    Eigen::Vector3d nn = u.cross(v);
    double len = nn.norm();
    if (len > 1e-14 * std::max(1.0, scale * scale)) {
      nn /= len;
      if (nn.dot(inner - Eigen::Vector3d(pts[a])) > 0) {  // orient outward
        std::swap(f.b, f.c);
        nn = -nn;
      }
      f.normal = nn;
      f.offset = nn.dot(pts[a]);
    }
    return f;
  };

  faces.push_back(make_face(i0, i1, i2));
  faces.push_back(make_face(i0, i1, i3));
  faces.push_back(make_face(i0, i2, i3));
  faces.push_back(make_face(i1, i2, i3));

  auto visible = [&](const Face& f, int p) {
    if (f.normal.isZero(0.0)) return false;  // sliver: never blocks, never sees
    return f.normal.dot(pts[p]) - f.offset > vis_tol;
  };

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> vis;
    for (int fi = 0; fi < int(faces.size()); ++fi)
      if (faces[fi].alive && visible(faces[fi], p)) vis.push_back(fi);
    if (vis.empty()) continue;  // inside or on the current hull

    // Horizon: directed edges of visible faces whose neighbor is not visible.
    // Edge (a,b) of a visible face is on the horizon iff (b,a) does not occur
    // among visible faces' edges.
    std::map<std::pair<int, int>, int> edge_count;
    for (int fi : vis) {
      const Face& f = faces[fi];
      edge_count[{f.a, f.b}]++;
      edge_count[{f.b, f.c}]++;
      edge_count[{f.c, f.a}]++;
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [e, cnt] : edge_count) {
      (void)cnt;
      if (!edge_count.count({e.second, e.first})) horizon.push_back(e);
    }
    for (int fi : vis) faces[fi].alive = false;
    for (const auto& e : horizon) faces.push_back(make_face(e.first, e.second, p));
  }

  // Collect referenced corners and remap, re-checking the winding of every
  // surviving face against the interior point (sliver faces created during
  // the build can carry arbitrary orientation).
  std::vector<int> used(n, -1);
  Hull3d out;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    int a = f.a, b = f.b, c = f.c;
    Eigen::Vector3d nn =
        Eigen::Vector3d(pts[b] - pts[a]).cross(Eigen::Vector3d(pts[c] - pts[a]));
    if (nn.dot(inner - Eigen::Vector3d(pts[a])) > 0) std::swap(b, c);
    for (int idx : {a, b, c}) {
      if (used[idx] < 0) {
        used[idx] = int(out.vertices.size());
        out.vertices.push_back(pts[idx]);
      }
    }
    out.triangles.push_back({used[a], used[b], used[c]});
  }
  return out;
}

HRep facet_hrep(const std::vector<Eigen::VectorXd>& vertices) {
  if (vertices.empty()) fail(Errc::DegenerateBody, "no vertices");
  const int dim = int(vertices[0].size());
  const double scale = coord_scale(vertices);
  std::vector<Eigen::VectorXd> ns;
  std::vector<double> bs;

  if (dim == 2) {
    std::vector<Eigen::VectorXd> h = hull2d(vertices);
    if (int(h.size()) < 3) fail(Errc::DegenerateBody, "2D H-rep needs a full-dimensional polygon");
    for (size_t i = 0; i < h.size(); ++i) {
      const Eigen::VectorXd& a = h[i];
      const Eigen::VectorXd& b = h[(i + 1) % h.size()];
      Eigen::Vector2d d = b - a;
      double len = d.norm();
      if (len < 1e-12) continue;
      Eigen::Vector2d nn(d.y() / len, -d.x() / len);  // outward for CCW
      ns.push_back(nn);
      bs.push_back(nn.dot(Eigen::Vector2d(a)));
    }
  } else if (dim == 3) {
    Hull3d h = hull3d(vertices);
    for (const auto& t : h.triangles) {
      Eigen::Vector3d a = h.vertices[t[0]], b = h.vertices[t[1]], c = h.vertices[t[2]];
      Eigen::Vector3d nn = (b - a).cross(c - a);
      double len = nn.norm();
      if (len < 1e-12 * std::max(1.0, scale * scale)) continue;  // sliver
      nn /= len;
      double off = nn.dot(a);
      bool merged = false;
      for (size_t j = 0; j < ns.size(); ++j) {
        if ((Eigen::Vector3d(ns[j]) - nn).norm() < 1e-7 &&
            std::abs(bs[j] - off) < 1e-7 * std::max(1.0, scale)) {
          merged = true;
          break;
        }
      }
      if (!merged) {
        ns.push_back(nn);
        bs.push_back(off);
      }
    }
  } else {
    fail(Errc::DimensionUnsupported, "H-rep supports dim 2 and 3");
  }

  HRep rep;
  rep.normals.resize(int(ns.size()), dim);
  rep.offsets.resize(int(ns.size()));
  for (size_t i = 0; i < ns.size(); ++i) {
    rep.normals.row(int(i)) = ns[i].transpose();
    rep.offsets(int(i)) = bs[i];
  }
  return rep;
}

Eigen::MatrixXd orthonormal_frame(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  const Eigen::VectorXd u = v / v.norm();
  Eigen::VectorXd w = u;
  w[0] += (u[0] >= 0.0 ? 1.0 : -1.0);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n) - 2.0 / w.squaredNorm() * w * w.transpose();
  if ((H.col(0) - u).norm() > (H.col(0) + u).norm()) H = -H;
  return H;
}

}  // namespace incgeo
