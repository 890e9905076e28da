#include "incgeo/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "incgeo/directions.hpp"
#include "incgeo/errors.hpp"
#include "incgeo/hull.hpp"
#include "incgeo/measures.hpp"
#include "incgeo/projective.hpp"
#include "incgeo/rng.hpp"
#include "incgeo/witness.hpp"

namespace incgeo {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Eigen::VectorXd unit_direction(const Eigen::VectorXd& u) {
  if (u.size() != 2 && u.size() != 3)
    fail(Errc::DimensionUnsupported, "directions must have 2 or 3 coordinates");
  double nrm = u.norm();
  if (nrm < eps_geo) fail(Errc::InvalidDirection, "direction has zero length");
  return u / nrm;
}

Body linear_image(const Body& K, const Eigen::MatrixXd& m) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(vertices(K).size());
  for (const auto& v : vertices(K)) pts.push_back(m * v);
  return make_polytope(pts);
}

Eigen::MatrixXd random_sl(CounterRng& rng, int n) {
  for (;;) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    double det = m.determinant();
    if (std::abs(det) < 1e-6) continue;
    m *= std::pow(std::abs(det), -1.0 / n);
    // Fold a negative determinant into an axis flip to land in SL_n.
    if (det < 0.0) m.col(0) *= -1.0;
    return m;
  }
}

// Minimal rotation taking v (unit) to e1; the identity-fixing choice keeps
// degenerate-family outputs reproducible.
Eigen::MatrixXd rotation_to_e1(const Eigen::VectorXd& v) {
  int n = int(v.size());
  if (n == 2) {
    Eigen::MatrixXd g(2, 2);
    g << v(0), v(1), -v(1), v(0);
    return g;
  }
  Eigen::Vector3d w = v;
  Eigen::Vector3d axis = w.cross(Eigen::Vector3d::UnitX());
  double s = axis.norm();
  double c = w.x();
  if (s < 1e-12) {
    if (c > 0.0) return Eigen::MatrixXd::Identity(3, 3);
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(3, 3);
    g(0, 0) = -1.0;
    g(2, 2) = -1.0;  // half turn about e2
    return g;
  }
  axis /= s;
  Eigen::Matrix3d k;
  k << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity() + s * k + (1.0 - c) * k * k;
  return g;
}

void require_symmetric_polytopes(const std::vector<const Body*>& bodies,
                                 int n, const char* op) {
  for (const Body* b : bodies) {
    if (!b->is_polytope())
      fail(Errc::UnsupportedOperandPair,
           std::string(op) + " needs polytope operands; polytopalize first");
    if (b->dim() != n)
      fail(Errc::InvalidParams, "operands live in different dimensions");
    if (!is_symmetric(*b))
      fail(Errc::SymmetryRequired,
           std::string(op) + " applies to origin-symmetric bodies only");
  }
}

// Direction on the grid where A sticks out past B the most, by width.
std::pair<Eigen::VectorXd, double> width_gap_direction(const Body& A,
                                                       const Body& B) {
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

// Intrinsic (n-1)-dimensional mixed volume of the projections of the tuple
// onto v-perp: a plain length in 2D, a planar mixed area in 3D.
double projected_tuple_measure(const std::vector<Body>& ks,
                               const Eigen::VectorXd& v) {
  int n = int(v.size());
  if (n == 2) return intrinsic_measure(project_hyperplane(ks[0], v));
  Eigen::MatrixXd w = orthonormal_frame(v).rightCols(2);
  std::vector<Body> flat;
  for (const auto& k : ks) {
    std::vector<Eigen::VectorXd> pts;
    for (const auto& p : vertices(project_hyperplane(k, v)))
      pts.push_back(w.transpose() * p);
    flat.push_back(make_polytope(pts));
  }
  return mixed_volume(flat);
}

}  // namespace

DegenerateLimit degenerate_mixed_limit(const Body& A,
                                       const std::vector<Body>& ks,
                                       const Eigen::VectorXd& v,
                                       const std::vector<double>& steps) {
  Eigen::VectorXd d = unit_direction(v);
  int n = A.dim();
  if (int(d.size()) != n)
    fail(Errc::InvalidParams, "direction dimension does not match the body");
  if (int(ks.size()) != n - 1)
    fail(Errc::ArityMismatch, "need n-1 companion bodies for the mixed volume");
  if (steps.size() < 2)
    fail(Errc::InvalidParams, "need at least two degeneration steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] <= 0.0 || (i > 0 && steps[i] >= steps[i - 1]))
      fail(Errc::InvalidParams, "steps must be positive and strictly decreasing");
  }

  DegenerateLimit out;
  Eigen::MatrixXd vvt = d * d.transpose();
  for (double t : steps) {
    Eigen::MatrixXd ut = Eigen::MatrixXd::Identity(n, n) - (1.0 - t) * vvt;
    std::vector<Body> tuple{A};
    for (const auto& k : ks) tuple.push_back(linear_image(k, ut));
    out.values.push_back(mixed_volume(tuple));
  }

  std::size_t last = steps.size() - 1;
  double t0 = steps[last - 1], t1 = steps[last];
  double v0 = out.values[last - 1], v1 = out.values[last];
  out.limit = v1 - t1 * (v0 - v1) / (t0 - t1);
  out.factorized = width(A, d) * projected_tuple_measure(ks, d) / double(n);

  double tol = 1e-5 * std::max(1.0, std::abs(out.factorized));
  if (std::abs(out.limit - out.factorized) > tol)
    fail(Errc::MeasuredComparisonFailed,
         "degenerate limit " + fmt(out.limit) +
             " disagrees with the factorized value " + fmt(out.factorized));
  return out;
}

SuiteReport affine_identify_driver(const Body& A, const Body& B,
                                   const std::vector<Body>& ks, int samples,
                                   std::uint64_t seed) {
  int n = A.dim();
  if (int(ks.size()) != n - 1)
    fail(Errc::ArityMismatch, "need n-1 companion bodies for the mixed volume");
  std::vector<const Body*> all{&A, &B};
  for (const auto& k : ks) all.push_back(&k);
  require_symmetric_polytopes(all, n, "linear-position comparison");
  if (samples < 1) fail(Errc::InvalidParams, "need at least one sample");

  SuiteReport report;
  if (subset_of(A, B)) {
    CounterRng rng(seed);
    bool violated = false;
    for (int s = 0; s < samples; ++s) {
      CounterRng sub = rng.split(std::uint64_t(s));
      Eigen::MatrixXd u = random_sl(sub, n);
      std::vector<Body> with_a{linear_image(A, u)}, with_b{linear_image(B, u)};
      for (const auto& k : ks) {
        with_a.push_back(k);
        with_b.push_back(k);
      }
      double lhs = mixed_volume(with_a);
      double rhs = mixed_volume(with_b);
      bool bad = lhs > rhs + eps_cmp * std::max(1.0, std::abs(rhs));
      violated = violated || bad;
      report.rows.push_back(SuiteRow{s, "sl seed=" + std::to_string(seed), lhs,
                                     rhs, rhs - lhs, bad ? "violation" : "ok"});
    }
    if (violated)
      fail(Errc::MeasuredComparisonFailed,
           "measured a linear-position violation for an included pair");
    report.verdict = "CONSISTENT";
    report.note = "A sits inside B and every sampled position agrees";
    return report;
  }

  // Non-included symmetric pairs always leave a width gap; flattening the
  // companions onto its orthogonal hyperplane isolates exactly that gap.
  auto [v, gap] = width_gap_direction(A, B);
  Eigen::MatrixXd g = rotation_to_e1(v);
  Eigen::MatrixXd pe = Eigen::MatrixXd::Identity(n, n) - v * v.transpose();
  bool violated = false;
  int id = 0;
  for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
    Eigen::MatrixXd ut = (pe + t * (v * v.transpose())) * g;
    std::vector<Body> with_a{A}, with_b{B};
    for (const auto& k : ks) {
      Body image = linear_image(k, ut);
      with_a.push_back(image);
      with_b.push_back(image);
    }
    double lhs = mixed_volume(with_a);
    double rhs = mixed_volume(with_b);
    bool bad = lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs));
    violated = violated || bad;
    report.rows.push_back(SuiteRow{id++, "degenerate t=" + fmt(t), lhs, rhs,
                                   rhs - lhs, bad ? "violation" : "ok"});
  }
  std::ostringstream note;
  if (violated) {
    report.verdict = "VIOLATION";
    note << "width gap " << fmt(gap) << " at v=" << v.transpose()
         << " separates the pair under the degenerate family";
  } else {
    report.verdict = "INCONCLUSIVE";
    note << "width gap " << fmt(gap) << " at v=" << v.transpose()
         << " did not separate within the sampled degeneration";
  }
  report.note = note.str();
  return report;
}

TupleSeparation tuple_separation_driver(const std::vector<Body>& as,
                                        const std::vector<Body>& bs) {
  if (as.empty() || as.size() != bs.size())
    fail(Errc::ArityMismatch, "need matching non-empty tuples");
  int n = int(as.size());
  if (n != as[0].dim())
    fail(Errc::InvalidParams, "tuple length must equal the ambient dimension");
  std::vector<const Body*> all;
  for (const auto& a : as) all.push_back(&a);
  for (const auto& b : bs) all.push_back(&b);
  require_symmetric_polytopes(all, as[0].dim(), "tuple comparison");

  TupleSeparation out;
  out.ts.assign(n, 1.0);
  double prod = 1.0;
  for (int i = 1; i < n; ++i) {
    out.ts[i] = max_scaling(as[i], bs[i]);
    prod *= out.ts[i];
  }
  out.ts[0] = 1.0 / prod;
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  out.inclusion_ok = subset_of(scale_translate(as[0], out.ts[0], zero), bs[0]);

  // Degenerate configuration: every u_i squeezed toward a segment along its
  // own direction turns the mixed volume into a product of supports (common
  // constant dropped on both sides).
  auto grid = direction_grid(n, n == 2 ? 36 : 12);
  int m = int(grid.size());
  out.worst_product_margin = -std::numeric_limits<double>::infinity();
  out.products_ok = true;
  std::vector<int> idx(n, 0);
  std::string worst;
  for (;;) {
    double lhs = 1.0, rhs = 1.0;
    for (int i = 0; i < n; ++i) {
      lhs *= support(as[i], grid[idx[i]]);
      rhs *= support(bs[i], grid[idx[i]]);
    }
    double margin = lhs - rhs;
    if (margin > out.worst_product_margin) {
      out.worst_product_margin = margin;
      std::ostringstream os;
      for (int i = 0; i < n; ++i) os << (i ? ";" : "") << grid[idx[i]].transpose();
      worst = os.str();
    }
    if (margin > eps_cmp * std::max(1.0, std::abs(rhs))) out.products_ok = false;
    int pos = 0;
    while (pos < n && ++idx[pos] == m) idx[pos++] = 0;
    if (pos == n) break;
  }

  std::ostringstream note;
  if (!out.inclusion_ok)
    note << "derived scaling fails, so the tuple hypothesis must fail too; ";
  note << (out.products_ok ? "support products dominated"
                           : "support products violated")
       << " (worst margin " << fmt(out.worst_product_margin) << " at " << worst
       << ")";
  out.note = note.str();
  return out;
}

SuiteReport remark_counterexample_suite(int samples, std::uint64_t seed) {
  if (samples < 0) fail(Errc::InvalidParams, "sample count must not be negative");
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  Body r = make_reuleaux(2.0, 360);
  Body disk = polytopalize(make_ball(zero, 1.0), 360);

  SuiteReport report;
  bool all_ok = true;
  auto add_row = [&](int id, const std::string& params, const Body& u1r,
                     const Body& u2d, const Body& u1d) {
    double lhs = mixed_volume({u1r, u2d});
    double rhs = mixed_volume({u1d, u2d});
    bool ok = lhs <= rhs + 1e-3 * std::max(1.0, std::abs(rhs));
    all_ok = all_ok && ok;
    report.rows.push_back(
        SuiteRow{id, params, lhs, rhs, rhs - lhs, ok ? "ok" : "violation"});
  };

  add_row(0, "identity", r, disk, disk);
  CounterRng rng(seed);
  for (int s = 1; s <= samples; ++s) {
    CounterRng sub = rng.split(std::uint64_t(s));
    Eigen::MatrixXd u1 = random_sl(sub, 2);
    Eigen::MatrixXd u2 = random_sl(sub, 2);
    add_row(s, "sl seed=" + std::to_string(seed), linear_image(r, u1),
            linear_image(disk, u2), linear_image(disk, u1));
  }

  // The scaling the symmetric machinery would derive: t2 from the identical
  // second pair is 1, so the first inclusion must hold at scale 1 - and does
  // not, not even up to translation.
  double t1 = 1.0 / max_scaling(disk, disk);
  bool scaled_inclusion = subset_of(scale_translate(r, t1, zero), disk);
  bool translate = translative_inclusion(r, disk).has_value();

  if (all_ok && !scaled_inclusion && !translate) {
    report.verdict = "VIOLATION";
    report.note =
        "the tuple inequality holds for every sampled pair, yet no translate "
        "of the disk contains the constant-width triangle: the symmetric "
        "conclusion fails without symmetry";
  } else {
    report.verdict = "INCONCLUSIVE";
    report.note = "counterexample failed to materialize";
  }
  return report;
}

ClosingInequality closing_inequality(double delta, double big_r, double d,
                                     double eps1, double d1, int n) {
  if (delta <= 0.0 || big_r <= 0.0 || eps1 <= 0.0)
    fail(Errc::InvalidParams, "all closing-inequality parameters must be positive");
  if (d <= 2.0 || d1 <= 2.0)
    fail(Errc::InvalidParams, "hyperplane gaps d and d1 must exceed 2");
  if (n < 1) fail(Errc::InvalidParams, "dimension must be at least 1");

  ClosingInequality out;
  out.lhs = (1.0 / (delta * (delta + 2.0))) *
            std::pow(eps1 / (d1 * (d1 + 2.0 * eps1)), n - 1);
  out.rhs = std::pow(big_r / (d * std::sqrt(d + 2.0 * big_r)), n);
  out.holds = out.lhs <= out.rhs;
  return out;
}

ProjectiveTupleReport projective_tuple_witness(
    const Body& k1, const Body& l1, const std::vector<Body>& kis,
    const std::vector<Body>& lis, const std::vector<double>& eps_schedule) {
  int n = k1.dim();
  if (n != 2 && n != 3)
    fail(Errc::DimensionUnsupported, "tuple witness covers dimensions 2 and 3");
  if (int(kis.size()) != n - 1 || int(lis.size()) != n - 1)
    fail(Errc::ArityMismatch, "need n-1 companion pairs");
  std::vector<const Body*> all{&k1, &l1};
  for (const auto& k : kis) all.push_back(&k);
  for (const auto& l : lis) all.push_back(&l);
  for (const Body* b : all) {
    if (!b->is_polytope())
      fail(Errc::UnsupportedOperandPair,
           "tuple witness needs polytope operands; polytopalize first");
    if (b->dim() != n)
      fail(Errc::InvalidParams, "operands live in different dimensions");
    if (interior_margin(*b) <= eps_geo)
      fail(Errc::OriginNotInterior, "every body needs 0 strictly interior");
  }
  std::vector<double> schedule = eps_schedule;
  if (schedule.empty()) {
    double delta = 0.5;
    for (int i = 0; i < 60; ++i, delta *= 0.5) schedule.push_back(delta);
  }
  for (double delta : schedule)
    if (delta <= 0.0)
      fail(Errc::InvalidParams, "delta schedule entries must be positive");

  // Certifies K1 genuinely pokes out of L1 (throws NoWitnessPoint when it
  // does not) before any geometry is attempted.
  separate_by_balls(k1, l1);

  // The blow-up knob is the gap between a ball inside K1 and a hyperplane
  // clearing every body. A ball inside a polytope can approach a supporting
  // hyperplane only at facet contact, so the axis must be the normal of a
  // facet of K1 whose plane already clears L1.
  const HRep hk = hrep(k1);
  int best = -1;
  double gap = 0.0;
  for (int j = 0; j < hk.normals.rows(); ++j) {
    double gj = hk.offsets(j) - support(l1, hk.normals.row(j).transpose());
    bool better = best < 0 || gj > gap + 1e-12;
    if (best >= 0 && std::abs(gj - gap) <= 1e-12) {
      const auto cand = hk.normals.row(j), cur = hk.normals.row(best);
      better = std::lexicographical_compare(cand.data(), cand.data() + n,
                                            cur.data(), cur.data() + n);
    }
    if (better) {
      best = j;
      gap = gj;
    }
  }
  const Eigen::VectorXd a = hk.normals.row(best).transpose();
  const double b_top = hk.offsets(best);
  if (gap <= 1e-9 * std::max(1.0, b_top))
    fail(Errc::WitnessSearchFailed,
         "every facet of K1 sits below the support of L1; the tangent "
         "configuration cannot clear L1");

  // Tangency anchor on the clearing facet: the radial exit point when the
  // ray from 0 leaves through this facet, the facet vertex centroid
  // otherwise.
  Eigen::VectorXd q;
  {
    double radial = std::numeric_limits<double>::infinity();
    for (int i = 0; i < hk.normals.rows(); ++i) {
      double den = hk.normals.row(i).dot(a);
      if (den > eps_geo) radial = std::min(radial, hk.offsets(i) / den);
    }
    if (std::abs(radial - b_top) <= 1e-9 * std::max(1.0, b_top)) {
      q = radial * a;
    } else {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
      int count = 0;
      for (const auto& v : vertices(k1)) {
        if (std::abs(a.dot(v) - b_top) <= 1e-9 * std::max(1.0, b_top)) {
          acc += v;
          ++count;
        }
      }
      q = acc / double(count);
    }
  }

  // Tangent radius: as large as the other facets allow, capped so that the
  // normalized gaps of the fixed balls stay above the closing inequality's
  // d > 2 threshold while delta alone shrinks.
  double rho = std::min(gap / 4.0, b_top / 4.0);
  for (int i = 0; i < hk.normals.rows(); ++i) {
    if (i == best) continue;
    double den = 1.0 - hk.normals.row(i).dot(a);
    if (den > 1e-12)
      rho = std::min(rho, (hk.offsets(i) - hk.normals.row(i).dot(q)) / den);
  }
  if (rho <= 1e-9 * std::max(1.0, b_top))
    fail(Errc::WitnessSearchFailed, "tangent ball collapsed at the clearing facet");

  // Tuple scalings: as large as the hyperplane allows, leaving a quarter of
  // the gap as admissibility margin.
  ProjectiveTupleReport report;
  for (int i = 0; i < n - 1; ++i) {
    double reach = std::max(support(kis[i], a), support(lis[i], a));
    report.lambdas.push_back((b_top - 0.75 * gap) / reach);
  }

  // Inner ball on the axis at level zero, inside every scaled K_i.
  const Eigen::VectorXd z0 = q - b_top * a;
  double avail = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n - 1; ++i)
    avail = std::min(avail,
                     report.lambdas[std::size_t(i)] * interior_margin(kis[i]));
  avail -= z0.norm();
  if (avail <= eps_geo)
    fail(Errc::WitnessSearchFailed,
         "tuple bodies cannot host an inner ball on the witness axis");
  const double eps0 = 0.99 * std::min(avail, b_top - 2.5 * rho);
  report.eps0 = eps0;

  // Enclosing ball of the whole L side, receded along the axis until its
  // top clears the facet level by half the gap.
  std::vector<Body> tuple_k, tuple_l;
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n - 1; ++i) {
    tuple_k.push_back(scale_translate(kis[i], report.lambdas[std::size_t(i)], zero));
    tuple_l.push_back(scale_translate(lis[i], report.lambdas[std::size_t(i)], zero));
  }
  std::vector<Eigen::VectorXd> covered = vertices(l1);
  for (const auto& body : tuple_l)
    for (const auto& w : vertices(body)) covered.push_back(w);
  const double tau = b_top - gap / 2.0;
  double t_w = 0.0;
  for (const auto& w : covered) {
    Eigen::VectorXd v = w - q;
    t_w = std::max(t_w, (v.squaredNorm() - (tau - b_top) * (tau - b_top)) /
                            (2.0 * (tau - a.dot(w))));
  }
  const Eigen::VectorXd cw = q - t_w * a;
  double rw = 0.0;
  for (const auto& w : covered) rw = std::max(rw, (w - cw).norm());
  const double top_w = b_top - t_w + rw;

  const double sigma = 1.0 / rho;
  report.big_r = sigma * rw;
  report.eps1 = sigma * eps0;
  Eigen::MatrixXd frame = orthonormal_frame(a);

  for (int step = 0; step < int(schedule.size()); ++step) {
    double delta = schedule[step];
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
    shift(0) = 1.0 - delta;
    shift -= sigma * (frame.transpose() * q);
    FLMap f = compose(canonical_f0(n),
                      flmap_from_affine(sigma * frame.transpose(), shift));

    double lhs, rhs;
    try {
      std::vector<Body> mapped_k{apply_body(f, k1)}, mapped_l{apply_body(f, l1)};
      for (int i = 0; i < n - 1; ++i) {
        mapped_k.push_back(apply_body(f, tuple_k[std::size_t(i)]));
        mapped_l.push_back(apply_body(f, tuple_l[std::size_t(i)]));
      }
      lhs = mixed_volume(mapped_k);
      rhs = mixed_volume(mapped_l);
    } catch (const GeomError& e) {
      if (e.code() != Errc::DomainViolation) throw;
      fail(Errc::WitnessSearchFailed,
           "no reversal before numerical breakdown at delta " + fmt(delta));
    }

    double d_outer = delta + sigma * (b_top - top_w);
    double d_inner = delta + sigma * (b_top - eps0);
    ClosingInequality ci =
        closing_inequality(delta, report.big_r, d_outer, report.eps1, d_inner, n);
    double margin = lhs - rhs;
    bool reversed = margin > 1e-9 * std::max(1.0, std::abs(rhs));
    std::ostringstream params;
    params << "delta=" << fmt(delta) << " closing_lhs=" << fmt(ci.lhs)
           << " closing_rhs=" << fmt(ci.rhs)
           << " closing_holds=" << (ci.holds ? "yes" : "no");
    report.suite.rows.push_back(SuiteRow{step, params.str(), lhs, rhs, margin,
                                         reversed ? "reversed" : "held"});
    if (reversed) {
      report.reversal_delta = delta;
      report.d_outer = d_outer;
      report.d_inner = d_inner;
      break;
    }
    report.d_outer = d_outer;
    report.d_inner = d_inner;
  }

  if (!report.reversal_delta) {
    const SuiteRow& last = report.suite.rows.back();
    fail(Errc::WitnessSearchFailed,
         "no mixed-volume reversal within the delta schedule (last margin " +
             fmt(last.margin) + ")");
  }
  report.suite.verdict = "VIOLATION";
  std::ostringstream note;
  note << "inequality reverses at delta=" << fmt(*report.reversal_delta)
       << " along axis " << a.transpose();
  report.suite.note = note.str();
  return report;
}

}  // namespace incgeo
