#include "incgeo/directions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "incgeo/errors.hpp"

namespace incgeo {
namespace {

std::vector<Eigen::VectorXd> icosphere(int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
      {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
      {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      int idx = int(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  std::sort(verts.begin(), verts.end(), [](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
  });
  std::vector<Eigen::VectorXd> out;
  out.reserve(verts.size());
  for (const auto& v : verts) out.push_back(v);
  return out;
}

}  // namespace

std::vector<Eigen::VectorXd> direction_grid(int dim, int count) {
  if (count < 1) fail(Errc::InvalidParams, "direction grid needs count >= 1");
  if (dim == 2) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      double a = 2.0 * M_PI * double(i) / double(count);
      Eigen::Vector2d u(std::cos(a), std::sin(a));
      out.push_back(u);
    }
    return out;
  }
  if (dim == 3) {
    int subdiv = 0, verts = 12;
    while (verts < count && subdiv < 8) {
      ++subdiv;
      verts = 10 * (1 << (2 * subdiv)) + 2;
    }
    return icosphere(subdiv);
  }
  fail(Errc::DimensionUnsupported, "direction grids exist for dim 2 and 3");
}

std::vector<Eigen::VectorXd> default_direction_grid(int dim) {
  return direction_grid(dim, dim == 2 ? 720 : 2562);
}

}  // namespace incgeo
