// Command-line front end: body files in and out, inclusion checks with
// witness certificates, and the comparison suites as CSV reports.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "incgeo/body.hpp"
#include "incgeo/errors.hpp"
#include "incgeo/identify.hpp"
#include "incgeo/io.hpp"
#include "incgeo/rng.hpp"
#include "incgeo/tuples.hpp"
#include "incgeo/witness.hpp"

namespace {

using namespace incgeo;

Eigen::MatrixXd random_linear(CounterRng& rng, int n) {
  for (;;) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    if (std::abs(m.determinant()) >= 1e-6) return m;
  }
}

// Random origin-symmetric polytope: linear image of the unit cube.
Body random_symmetric(CounterRng& rng, int n) {
  Eigen::MatrixXd m = random_linear(rng, n);
  std::vector<Eigen::VectorXd> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd c(n);
    for (int i = 0; i < n; ++i) c(i) = (mask >> i & 1) ? 1.0 : -1.0;
    pts.push_back(m * c);
  }
  return make_polytope(pts);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const SuiteReport& report, const std::string& path) {
  std::ostringstream csv;
  csv << "sample_id,params,lhs,rhs,margin,verdict\n";
  csv.precision(12);
  for (const auto& row : report.rows)
    csv << row.sample_id << "," << csv_quote(row.params) << "," << row.lhs
        << "," << row.rhs << "," << row.margin << "," << csv_quote(row.verdict)
        << "\n";
  if (path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(path);
    if (!out) fail(Errc::InvalidParams, "cannot write CSV file " + path);
    out << csv.str();
  }

  std::map<std::string, int> counts;
  for (const auto& row : report.rows) ++counts[row.verdict];
  std::cout << "suite verdict: " << report.verdict;
  for (const auto& [verdict, count] : counts)
    std::cout << " | " << verdict << "=" << count;
  std::cout << "\n";
  if (!report.note.empty()) std::cout << report.note << "\n";
}

int cmd_check_inclusion(const std::string& path_a, const std::string& path_b,
                        bool translate) {
  Body a = load_body(path_a);
  Body b = load_body(path_b);
  std::optional<Eigen::VectorXd> shift;
  if (translate) {
    shift = translative_inclusion(a, b);
  } else if (subset_of(a, b)) {
    shift = Eigen::VectorXd::Zero(a.dim());
  }
  if (shift) {
    std::cout << "included with shift x0 = " << shift->transpose() << "\n";
    return 0;
  }
  WitnessCertificate cert = find_witness(a, b, "volume", 0.5);
  std::cout << dump_certificate(cert) << "\n";
  return 1;
}

int cmd_witness(const std::string& path_a, const std::string& path_b,
                const std::string& functional, double eps,
                const std::string& out_path) {
  Body a = load_body(path_a);
  Body b = load_body(path_b);
  WitnessCertificate cert;
  try {
    cert = find_witness(a, b, functional, eps);
  } catch (const GeomError& e) {
    if (e.code() != Errc::NoWitnessPoint) throw;
    std::cout << "A ⊆ B: no witness exists\n";
    return 1;
  }
  std::string serialized = dump_certificate(cert);
  if (out_path.empty()) {
    std::cout << serialized << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) fail(Errc::InvalidParams, "cannot write certificate file " + out_path);
    out << serialized << "\n";
  }
  std::cout.precision(12);
  std::cout << functional << "(FA) = " << cert.value_a << ", " << functional
            << "(FB) = " << cert.value_b << "\n";
  return 0;
}

SuiteReport sums_suite(int samples, std::uint64_t seed) {
  SuiteReport report;
  CounterRng rng(seed);
  int violations = 0;
  for (int s = 0; s < samples; ++s) {
    CounterRng sub = rng.split(std::uint64_t(s));
    Body a = random_symmetric(sub, 2);
    Body b = random_symmetric(sub, 2);
    if (subset_of(a, b)) {
      report.rows.push_back(SuiteRow{s, "included", 0.0, 0.0, 0.0, "ok"});
      continue;
    }
    SumViolation v = sym_sum_falsifier(a, b);
    std::ostringstream params;
    params.precision(12);
    params << "r=" << v.r << " dir=" << v.dir.transpose();
    report.rows.push_back(
        SuiteRow{s, params.str(), v.lhs, v.rhs, v.rhs - v.lhs, "violation"});
    ++violations;
  }
  report.verdict = violations > 0 ? "VIOLATION" : "CONSISTENT";
  report.note = "every non-included pair yielded a sum-comparison violation";
  return report;
}

int cmd_suite(const std::string& name, int samples,
              std::optional<std::uint64_t> seed, const std::string& csv_path) {
  const bool randomized = name == "sums" || name == "sections" ||
                          name == "projections" || name == "tuples-affine";
  if (randomized && !seed) {
    std::cerr << "suite " << name << " requires --seed\n";
    return 2;
  }

  if (name == "sums") {
    write_csv(sums_suite(samples, *seed), csv_path);
    return 0;
  }
  if (name == "sections") {
    CounterRng rng(*seed);
    Body a = random_symmetric(rng, 2);
    Body b = random_symmetric(rng, 2);
    write_csv(section_sum_suite(a, b, samples, *seed), csv_path);
    return 0;
  }
  if (name == "projections") {
    CounterRng rng(*seed);
    Body a = random_symmetric(rng, 3);
    Body b = random_symmetric(rng, 3);
    ProjectionReport report = projection_driver(a, b, samples);
    SuiteReport wrapped;
    wrapped.rows = report.rows;
    wrapped.verdict = report.projections_ok ? "CONSISTENT" : "VIOLATION";
    wrapped.note = report.projections_ok
                       ? "every sampled shadow of A fits in the matching shadow of B"
                       : "some shadow of A escapes the matching shadow of B";
    write_csv(wrapped, csv_path);
    std::cout.precision(12);
    std::cout << "projections dominated: " << (report.projections_ok ? "yes" : "no")
              << ", inflated container feasible: "
              << (report.global_feasible ? "yes" : "no");
    if (std::isfinite(report.dilation))
      std::cout << ", smallest certified dilation " << report.dilation;
    std::cout << "\n";
    return 0;
  }
  if (name == "tuples-affine") {
    CounterRng rng(*seed);
    Body a = random_symmetric(rng, 2);
    Body b = random_symmetric(rng, 2);
    Eigen::Vector2d lo(-1.0, -1.0), hi(1.0, 1.0);
    std::vector<Body> ks{make_box(lo, hi)};
    write_csv(affine_identify_driver(a, b, ks, samples, *seed), csv_path);
    return 0;
  }
  if (name == "tuples-projective") {
    Eigen::Vector2d lo(-1.0, -1.0), hi(1.0, 1.0);
    Body l1 = make_box(lo, hi);
    Body k1 = make_box(Eigen::Vector2d(-1.5, -0.5), Eigen::Vector2d(1.5, 0.5));
    std::vector<Body> kis{make_box(lo, hi)}, lis{make_box(lo, hi)};
    std::vector<double> schedule;
    double delta = 0.5;
    for (int i = 0; i < std::min(samples, 60); ++i, delta *= 0.5)
      schedule.push_back(delta);
    ProjectiveTupleReport report =
        projective_tuple_witness(k1, l1, kis, lis, schedule);
    write_csv(report.suite, csv_path);
    return 0;
  }
  if (name == "reuleaux") {
    ReuleauxReport report = reuleaux_counterexample(360);
    write_csv(report.suite, csv_path);
    std::cout.precision(12);
    std::cout << "min chord " << report.min_chord << ", equality gap "
              << report.equality_gap << ", disk translate feasible: "
              << (report.translate_feasible ? "yes" : "no") << "\n";
    return 0;
  }
  std::cerr << "unknown suite \"" << name << "\"\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inclusion identification by positions and mixed volumes"};
  app.require_subcommand(1);

  std::string path_a, path_b;
  bool translate = false;
  auto* check = app.add_subcommand("check-inclusion",
                                   "test A in B, emit a witness on failure");
  check->add_option("pathA", path_a, "body file for A")->required();
  check->add_option("pathB", path_b, "body file for B")->required();
  check->add_flag("--translate", translate, "allow a translation of A");

  std::string functional = "volume", out_path;
  double eps = 0.5;
  auto* wit = app.add_subcommand("witness",
                                 "build a fractional-linear witness for A not in B");
  wit->add_option("pathA", path_a, "body file for A")->required();
  wit->add_option("pathB", path_b, "body file for B")->required();
  wit->add_option("--functional", functional, "volume | surface | W<j>");
  wit->add_option("--eps", eps, "target contrast ratio in (0, 1]");
  wit->add_option("--out", out_path, "certificate output file (default stdout)");

  std::string suite_name, csv_path;
  int samples = 20;
  std::optional<std::uint64_t> seed;
  auto* suite = app.add_subcommand("suite", "run a comparison suite as CSV");
  suite->add_option("name", suite_name,
                    "sums | sections | projections | tuples-affine | "
                    "tuples-projective | reuleaux")
      ->required();
  suite->add_option("--samples", samples, "sample count");
  suite->add_option("--seed", seed, "RNG seed (required for randomized suites)");
  suite->add_option("--csv", csv_path, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check_inclusion(path_a, path_b, translate);
    if (wit->parsed()) return cmd_witness(path_a, path_b, functional, eps, out_path);
    return cmd_suite(suite_name, samples, seed, csv_path);
  } catch (const GeomError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
