#include "incgeo/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "incgeo/directions.hpp"
#include "incgeo/errors.hpp"
#include "incgeo/hull.hpp"
#include "incgeo/measures.hpp"
#include "incgeo/rng.hpp"

namespace incgeo {
namespace {

void require_polytopes(const Body& A, const Body& B, const char* op) {
  if (!A.is_polytope() || !B.is_polytope())
    fail(Errc::UnsupportedOperandPair,
         std::string(op) + " needs polytope operands; polytopalize first");
  if (A.dim() != B.dim())
    fail(Errc::InvalidParams, "operands live in different dimensions");
}

Eigen::VectorXd checked_direction(const Eigen::VectorXd& u) {
  if (u.size() != 2 && u.size() != 3)
    fail(Errc::DimensionUnsupported, "directions must have 2 or 3 coordinates");
  double nrm = u.norm();
  if (nrm < eps_geo) fail(Errc::InvalidDirection, "direction has zero length");
  return u / nrm;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Eigen::VectorXd random_unit(CounterRng& rng, int n) {
  for (;;) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    double nrm = v.norm();
    if (nrm > 1e-6) return v / nrm;
  }
}

// Simplex with standard-normal vertices, rejecting near-degenerate draws.
Body random_simplex(CounterRng& rng, int n) {
  for (;;) {
    std::vector<Eigen::VectorXd> pts(n + 1, Eigen::VectorXd(n));
    for (auto& p : pts)
      for (int i = 0; i < n; ++i) p(i) = rng.normal();
    Eigen::MatrixXd edges(n, n);
    for (int j = 0; j < n; ++j) edges.col(j) = pts[j + 1] - pts[0];
    if (std::abs(edges.determinant()) >= 1e-6) return make_polytope(pts);
  }
}

// Random full-dimensional zonotope-like body: a normal linear image of the
// centered unit cube.
Body random_cube_image(CounterRng& rng, int n) {
  for (;;) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    if (std::abs(m.determinant()) < 1e-6) continue;
    std::vector<Eigen::VectorXd> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Eigen::VectorXd corner(n);
      for (int i = 0; i < n; ++i) corner(i) = (mask >> i & 1) ? 0.5 : -0.5;
      pts.push_back(m * corner);
    }
    return make_polytope(pts);
  }
}

double section_measure(const Body& K, const Eigen::VectorXd& normal) {
  auto sec = section_hyperplane(K, normal, 0.0);
  return sec ? intrinsic_measure(*sec) : 0.0;
}

// Direction on the grid where A sticks out past B the most, by width.
std::pair<Eigen::VectorXd, double> widest_gap(const Body& A, const Body& B) {
  Eigen::VectorXd best;
  double gap = -std::numeric_limits<double>::infinity();
  for (const auto& u : default_direction_grid(A.dim())) {
    double g = width(A, u) - width(B, u);
    if (g > gap) {
      gap = g;
      best = u;
    }
  }
  return {best, gap};
}

}  // namespace

Body flat_unit_ball(const Eigen::VectorXd& u) {
  Eigen::VectorXd d = checked_direction(u);
  int n = int(d.size());
  std::vector<Eigen::VectorXd> pts;
  if (n == 2) {
    Eigen::VectorXd w(2);
    w << -d(1), d(0);
    pts.push_back(0.5 * w);
    pts.push_back(-0.5 * w);
  } else {
    Eigen::MatrixXd frame = orthonormal_frame(d);
    double radius = 1.0 / std::sqrt(M_PI);
    const int m = 256;
    for (int k = 0; k < m; ++k) {
      double a = 2.0 * M_PI * k / m;
      pts.push_back(radius * (std::cos(a) * frame.col(1) + std::sin(a) * frame.col(2)));
    }
  }
  return make_polytope(pts);
}

double width_from_sums(const Body& A, const Eigen::VectorXd& u,
                       const std::vector<double>& r_grid) {
  Eigen::VectorXd d = checked_direction(u);
  int n = A.dim();
  if (int(d.size()) != n)
    fail(Errc::InvalidParams, "direction dimension does not match the body");
  if (r_grid.size() < 3)
    fail(Errc::InvalidParams, "need at least three sum scales to fit the polynomial");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (r_grid[i] <= 0.0 || (i > 0 && r_grid[i] <= r_grid[i - 1]))
      fail(Errc::InvalidParams, "sum scales must be positive and strictly increasing");
  }

  Body flat = flat_unit_ball(d);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  int rows = int(r_grid.size());
  Eigen::MatrixXd vand(rows, n);
  Eigen::VectorXd vols(rows);
  for (int i = 0; i < rows; ++i) {
    double r = r_grid[i];
    vols(i) = volume(minkowski_sum(A, scale_translate(flat, r, zero)));
    double p = 1.0;
    for (int j = 0; j < n; ++j, p *= r) vand(i, j) = p;
  }
  // |A + r*flat| is a polynomial of degree n-1 in r (the top mixed volume of
  // a flat body vanishes); its leading coefficient is the width times the
  // unit flat measure.
  Eigen::VectorXd coeffs = vand.colPivHouseholderQr().solve(vols);
  return coeffs(n - 1);
}

SumViolation sym_sum_falsifier(const Body& A, const Body& B) {
  require_polytopes(A, B, "sum comparison");
  if (!is_symmetric(A) || !is_symmetric(B))
    fail(Errc::SymmetryRequired,
         "sum comparison separates only origin-symmetric bodies");
  if (subset_of(A, B))
    fail(Errc::NoViolationExists,
         "A is contained in B; every sum comparison holds");

  // For symmetric bodies non-inclusion shows up in the support function, and
  // the deepest violated facet of B hands us a width gap.
  HRep hb = hrep(B);
  int best = 0;
  double viol = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < hb.normals.rows(); ++j) {
    double v = support(A, hb.normals.row(j).transpose()) - hb.offsets(j);
    if (v > viol) {
      viol = v;
      best = j;
    }
  }
  Eigen::VectorXd dir = hb.normals.row(best).transpose();

  Body flat = flat_unit_ball(dir);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(A.dim());
  double r = 1.0;
  for (int iter = 0; iter < 60; ++iter, r *= 2.0) {
    Body k = scale_translate(flat, r, zero);
    double lhs = volume(minkowski_sum(A, k));
    double rhs = volume(minkowski_sum(B, k));
    if (lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs)))
      return SumViolation{k, r, lhs, rhs, dir};
  }
  fail(Errc::MeasuredComparisonFailed,
       "sum comparison refused to separate a non-included symmetric pair");
}

std::pair<double, double> mixed_ineq_check(const Body& A, const Body& B,
                                           const Body& K) {
  require_polytopes(A, B, "mixed volume comparison");
  int n = A.dim();
  std::vector<Body> with_a{A}, with_b{B};
  for (int i = 1; i < n; ++i) {
    with_a.push_back(K);
    with_b.push_back(K);
  }
  return {mixed_volume(with_a), mixed_volume(with_b)};
}

SuiteReport lutwak_simplex_suite(const Body& A, const Body& B, int samples,
                                 std::uint64_t seed) {
  require_polytopes(A, B, "simplex suite");
  if (samples < 1) fail(Errc::InvalidParams, "need at least one sample");

  SuiteReport report;
  CounterRng rng(seed);
  bool violated = false;
  for (int s = 0; s < samples; ++s) {
    CounterRng sub = rng.split(std::uint64_t(s));
    Body simplex = random_simplex(sub, A.dim());
    auto [lhs, rhs] = mixed_ineq_check(A, B, simplex);
    double tol = eps_cmp * std::max(1.0, std::abs(rhs));
    bool bad = lhs > rhs + tol;
    violated = violated || bad;
    report.rows.push_back(SuiteRow{s, "simplex seed=" + std::to_string(seed),
                                   lhs, rhs, rhs - lhs,
                                   bad ? "violation" : "ok"});
  }

  bool included = translative_inclusion(A, B).has_value();
  if (violated && included)
    fail(Errc::MeasuredComparisonFailed,
         "measured a mixed-volume violation for a pair the inclusion LP "
         "certifies as included");
  if (violated) {
    report.verdict = "VIOLATION";
    report.note = "a sampled simplex separates the pair";
  } else if (included) {
    report.verdict = "CONSISTENT";
    report.note = "no violation found and a translate of A fits in B";
  } else {
    report.verdict = "INCONCLUSIVE";
    report.note = "no sampled simplex separated a non-included pair";
  }
  return report;
}

SuiteReport section_sum_suite(const Body& A, const Body& B, int samples,
                              std::uint64_t seed) {
  require_polytopes(A, B, "section suite");
  if (!is_symmetric(A) || !is_symmetric(B))
    fail(Errc::SymmetryRequired,
         "section comparison separates only origin-symmetric bodies");
  if (samples < 1) fail(Errc::InvalidParams, "need at least one sample");
  int n = A.dim();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);

  SuiteReport report;
  CounterRng rng(seed);
  bool violated = false;
  for (int s = 0; s < samples; ++s) {
    CounterRng sub = rng.split(std::uint64_t(s));
    Body k = random_cube_image(sub, n);
    Eigen::VectorXd e = random_unit(sub, n);
    double lhs = section_measure(minkowski_sum(A, k), e);
    double rhs = section_measure(minkowski_sum(B, k), e);
    double tol = eps_cmp * std::max(1.0, std::abs(rhs));
    bool bad = lhs > rhs + tol;
    violated = violated || bad;
    report.rows.push_back(SuiteRow{s, "cube-image seed=" + std::to_string(seed),
                                   lhs, rhs, rhs - lhs,
                                   bad ? "violation" : "ok"});
  }

  // Both bodies are centered, so inclusion needs no translate.
  bool included = subset_of(A, B);
  if (!included) {
    // Constructed separation: a flat ball in a width-violating direction u,
    // sectioned along a hyperplane that contains u, isolates the width of
    // each summand as the scale grows.
    auto [u, gap] = widest_gap(A, B);
    if (gap > 1e-9) {
      Eigen::VectorXd normal;
      if (n == 2) {
        normal = Eigen::VectorXd(2);
        normal << -u(1), u(0);
      } else {
        normal = orthonormal_frame(u).col(2);
      }
      Body flat = flat_unit_ball(u);
      double r = 1.0;
      bool found = false;
      for (int iter = 0; iter < 60 && !found; ++iter, r *= 2.0) {
        Body k = scale_translate(flat, r, zero);
        double lhs = section_measure(minkowski_sum(A, k), normal);
        double rhs = section_measure(minkowski_sum(B, k), normal);
        if (lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs))) {
          report.rows.push_back(SuiteRow{samples, "constructed r=" + fmt(r),
                                         lhs, rhs, rhs - lhs, "violation"});
          violated = true;
          found = true;
        }
      }
      if (!found)
        fail(Errc::MeasuredComparisonFailed,
             "constructed section comparison failed to separate the pair");
    } else {
      report.note = "no width gap on the grid; constructed section unavailable";
    }
  }

  if (violated)
    report.verdict = "VIOLATION";
  else
    report.verdict = included ? "CONSISTENT" : "INCONCLUSIVE";
  return report;
}

ChainReport nonsym_sections_driver(const Body& A, const Body& B) {
  require_polytopes(A, B, "section chain");
  int n = A.dim();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  Body da = difference_body(A);
  Body db = difference_body(B);

  ChainReport report;
  auto push = [&](const std::string& name, std::optional<Eigen::VectorXd> x) {
    ChainLink link;
    link.name = name;
    link.feasible = x.has_value();
    link.shift = x ? *x : zero;
    report.links.push_back(std::move(link));
  };

  // Difference bodies are symmetric and centered, so the first link needs no
  // translate at all.
  push("A-A in B-B",
       subset_of(da, db) ? std::optional<Eigen::VectorXd>(zero) : std::nullopt);
  push("A+x in B-B", translative_inclusion(A, db));
  push("B-B in (n+1)B+x",
       translative_inclusion(db, scale_translate(B, double(n + 1), zero)));
  push("-B in nB+x",
       translative_inclusion(scale_translate(B, -1.0, zero),
                             scale_translate(B, double(n), zero)));

  report.all_feasible = true;
  for (const auto& link : report.links) {
    if (!link.feasible) {
      report.all_feasible = false;
      if (report.first_failure.empty()) report.first_failure = link.name;
    }
  }
  return report;
}

ProjectionReport projection_driver(const Body& A, const Body& B,
                                   int e_samples) {
  require_polytopes(A, B, "projection comparison");
  if (e_samples < 1) fail(Errc::InvalidParams, "need at least one hyperplane");
  int n = A.dim();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);

  ProjectionReport report;
  report.projections_ok = true;
  auto dirs = direction_grid(n, e_samples);
  for (int s = 0; s < int(dirs.size()); ++s) {
    const Eigen::VectorXd& u = dirs[s];
    Body pa = project_hyperplane(A, u);
    Body pb = project_hyperplane(B, u);
    double lhs = intrinsic_measure(pa);
    double rhs = intrinsic_measure(pb);
    bool fits;
    if (n == 2) {
      // Shadows are segments; inclusion up to translation is a length
      // comparison.
      fits = lhs <= rhs + eps_cmp * std::max(1.0, rhs);
    } else {
      // Work in coordinates of u-perp so the shadow of B is full-dimensional.
      Eigen::MatrixXd w = orthonormal_frame(u).rightCols(2);
      std::vector<Eigen::VectorXd> pa2, pb2;
      for (const auto& v : vertices(pa)) pa2.push_back(w.transpose() * v);
      for (const auto& v : vertices(pb)) pb2.push_back(w.transpose() * v);
      fits = translative_inclusion(make_polytope(pa2), make_polytope(pb2))
                 .has_value();
    }
    if (!fits) report.projections_ok = false;
    std::ostringstream os;
    os << "u=" << u.transpose();
    report.rows.push_back(
        SuiteRow{s, os.str(), lhs, rhs, rhs - lhs, fits ? "fits" : "fails"});
  }

  // The global dilation question only makes sense once every sampled shadow
  // fits; the guaranteed factor is then n/(n-1).
  report.dilation = std::numeric_limits<double>::infinity();
  if (report.projections_ok) {
    auto fits_in = [&](double f) {
      return translative_inclusion(A, scale_translate(B, f, zero)).has_value();
    };
    report.global_feasible = fits_in(double(n) / double(n - 1));
    if (fits_in(1.0)) {
      report.dilation = 1.0;
    } else if (fits_in(2.0)) {
      double lo = 1.0, hi = 2.0;
      for (int i = 0; i < 40; ++i) {
        double mid = 0.5 * (lo + hi);
        (fits_in(mid) ? hi : lo) = mid;
      }
      report.dilation = hi;
    }
  }
  return report;
}

double projection_body_support(const Body& K, const Eigen::VectorXd& u) {
  return intrinsic_measure(project_hyperplane(K, checked_direction(u)));
}

ReuleauxReport reuleaux_counterexample(int m) {
  if (m < 90)
    fail(Errc::InvalidParams,
         "need at least 90 arc samples for faithful chords");
  Body r = make_reuleaux(2.0, m);
  Body b = polar(r);
  Body a = polytopalize(make_ball(Eigen::VectorXd::Zero(2), 1.0), m);

  ReuleauxReport report;
  report.min_chord = std::numeric_limits<double>::infinity();
  report.equality_gap = std::numeric_limits<double>::infinity();
  // Central chords of the polar come straight off the support function of
  // the primal: the radial function of polar(R) in direction w is 1/h_R(w).
  auto dirs = direction_grid(2, 360);
  for (int s = 0; s < int(dirs.size()); ++s) {
    const Eigen::VectorXd& w = dirs[s];
    double chord = 1.0 / support(r, w) + 1.0 / support(r, -w);
    report.min_chord = std::min(report.min_chord, chord);
    report.equality_gap = std::min(report.equality_gap, std::abs(chord - 2.0));
    std::ostringstream os;
    os << "w=" << w.transpose();
    report.suite.rows.push_back(SuiteRow{s, os.str(), 2.0, chord, chord - 2.0,
                                         chord >= 2.0 - 1e-6 ? "ok"
                                                             : "violation"});
  }
  report.translate_feasible = translative_inclusion(a, b).has_value();

  bool chords_dominate = report.min_chord >= 2.0 - 1e-6;
  if (chords_dominate && !report.translate_feasible) {
    report.suite.verdict = "VIOLATION";
    report.suite.note =
        "every central chord of the polar covers the disk chord, yet no "
        "translate of the disk fits inside";
  } else {
    report.suite.verdict = "INCONCLUSIVE";
    report.suite.note = "counterexample failed to materialize";
  }
  return report;
}

}  // namespace incgeo
