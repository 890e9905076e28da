#include "incgeo/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "incgeo/errors.hpp"

namespace incgeo {
namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::InvalidParams, "input is not valid JSON");
  return j;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(Errc::InvalidParams, std::string("missing numeric field \"") + key + "\"");
  return j[key].get<double>();
}

Eigen::VectorXd vector_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].empty())
    fail(Errc::InvalidParams, std::string("missing vector field \"") + key + "\"");
  const json& arr = j[key];
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      fail(Errc::InvalidParams, std::string("field \"") + key + "\" holds a non-number");
    v(int(i)) = arr[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].empty())
    fail(Errc::InvalidParams, std::string("missing matrix field \"") + key + "\"");
  const json& rows = j[key];
  Eigen::MatrixXd m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array())
      fail(Errc::InvalidParams, std::string("field \"") + key + "\" row is not an array");
    if (i == 0) m.resize(rows.size(), rows[i].size());
    if (int(rows[i].size()) != m.cols())
      fail(Errc::InvalidParams, std::string("field \"") + key + "\" rows have mixed lengths");
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      if (!rows[i][k].is_number())
        fail(Errc::InvalidParams, std::string("field \"") + key + "\" holds a non-number");
      m(int(i), int(k)) = rows[i][k].get<double>();
    }
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Body body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(Errc::InvalidParams, "body needs a string \"type\" field");
  const std::string type = j["type"].get<std::string>();
  if (type == "vpolytope") {
    Eigen::MatrixXd rows = matrix_field(j, "vertices");
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < rows.rows(); ++i) pts.push_back(rows.row(i).transpose());
    return make_polytope(pts);
  }
  if (type == "ellipsoid")
    return make_ellipsoid(vector_field(j, "center"), matrix_field(j, "shape"));
  if (type == "ball")
    return make_ball(vector_field(j, "center"), number_field(j, "radius"));
  if (type == "reuleaux") return make_reuleaux(number_field(j, "width"));
  if (type == "ellipsoid_params") {
    EllipsoidParams p;
    p.R = number_field(j, "R");
    p.r = number_field(j, "r");
    p.delta = number_field(j, "delta");
    int n = 2;
    if (j.contains("n")) {
      if (!j["n"].is_number_integer())
        fail(Errc::InvalidParams, "field \"n\" must be an integer");
      n = j["n"].get<int>();
    }
    return body_from_params(p, n);
  }
  fail(Errc::InvalidParams, "unknown body type \"" + type + "\"");
}

json body_to_json(const Body& K) {
  json j;
  if (K.is_polytope()) {
    j["type"] = "vpolytope";
    json rows = json::array();
    for (const auto& v : vertices(K)) rows.push_back(vector_to_json(v));
    j["vertices"] = rows;
  } else {
    j["type"] = "ellipsoid";
    j["center"] = vector_to_json(K.ellipsoid().center);
    j["shape"] = matrix_to_json(K.ellipsoid().shape);
  }
  return j;
}

FLMap flmap_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::InvalidParams, "map must be a JSON object");
  Eigen::MatrixXd mat = matrix_field(j, "matrix");
  if (mat.rows() != mat.cols() || mat.rows() < 3)
    fail(Errc::InvalidParams, "map matrix must be square of size n+1, n >= 2");
  if (!j.contains("domain_sign") || !j["domain_sign"].is_string())
    fail(Errc::InvalidParams, "map needs a \"domain_sign\" of \"+\" or \"-\"");
  const std::string sign = j["domain_sign"].get<std::string>();
  if (sign != "+" && sign != "-")
    fail(Errc::InvalidParams, "map needs a \"domain_sign\" of \"+\" or \"-\"");
  return make_flmap(mat, sign == "+" ? +1 : -1);
}

json flmap_to_json(const FLMap& F) {
  json j;
  j["matrix"] = matrix_to_json(F.mat);
  j["domain_sign"] = F.domain_sign > 0 ? "+" : "-";
  return j;
}

}  // namespace

Body parse_body(const std::string& text) { return body_from_json(parse_text(text)); }

std::string dump_body(const Body& K) { return body_to_json(K).dump(); }

Body load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidParams, "cannot read body file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_body(buf.str());
}

void save_body(const Body& K, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::InvalidParams, "cannot write body file " + path);
  out << dump_body(K) << "\n";
}

FLMap parse_flmap(const std::string& text) {
  return flmap_from_json(parse_text(text));
}

std::string dump_flmap(const FLMap& F) { return flmap_to_json(F).dump(); }

WitnessCertificate parse_certificate(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("flmap"))
    fail(Errc::InvalidParams, "certificate needs a \"flmap\" field");
  if (!j.contains("functional") || !j["functional"].is_string())
    fail(Errc::InvalidParams, "certificate needs a string \"functional\" field");
  WitnessCertificate cert;
  cert.F = flmap_from_json(j["flmap"]);
  cert.functional = j["functional"].get<std::string>();
  cert.value_a = number_field(j, "value_A");
  cert.value_b = number_field(j, "value_B");
  cert.eps_target = number_field(j, "eps");
  return cert;
}

std::string dump_certificate(const WitnessCertificate& cert) {
  json j;
  j["flmap"] = flmap_to_json(cert.F);
  j["functional"] = cert.functional;
  j["value_A"] = cert.value_a;
  j["value_B"] = cert.value_b;
  j["eps"] = cert.eps_target;
  return j.dump();
}

}  // namespace incgeo
