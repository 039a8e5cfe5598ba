#include "metext/io.hpp"

#include <fstream>
#include <sstream>

#include "metext/error.hpp"

namespace metext {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

std::optional<double> optional_number(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

Json complex_to_json(const SimplicialComplex& complex) {
  Json j;
  j["vertices"] = complex.labels();
  Json simplices = Json::array();
  for (const auto& s : complex.maximal_simplices()) simplices.push_back(simplex_to_json(complex, s));
  j["maximal_simplices"] = std::move(simplices);
  return j;
}

SimplicialComplex complex_from_json(const Json& j) {
  return SimplicialComplex::build(field<std::vector<std::string>>(j, "vertices"),
                                  field<std::vector<std::vector<std::string>>>(j, "maximal_simplices"));
}

MetricValidation metric_from_json(const SimplicialComplex& complex, const WordMetricTable& word, const Json& j) {
  const auto type = field<std::string>(j, "type");
  const auto A = optional_number(j, "A");
  const auto B = optional_number(j, "B");
  const auto C = optional_number(j, "C");
  std::optional<QiConstants> qi;
  if (A || B) qi = QiConstants{A.value_or(1.0), B.value_or(0.0)};

  if (type == "word") {
    MetricValidation v;
    v.metric = VertexMetric::from_word(word, qi ? qi : QiConstants{1.0, 0.0}).with_constant(C);
    return v;
  }
  if (type != "explicit") throw Error(ErrorCode::ParseError, "metric type must be 'word' or 'explicit'");

  const auto order = field<std::vector<std::string>>(j, "order");
  const auto matrix = field<std::vector<std::vector<double>>>(j, "matrix");
  const std::size_t n = complex.vertex_count();
  if (order.size() != n || matrix.size() != n)
    throw Error(ErrorCode::InvalidMetricShape, "metric must list every vertex of the complex exactly once");
  std::vector<std::size_t> pos(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = complex.require(order[i]);
    if (seen[v.index]) throw Error(ErrorCode::DuplicateVertex, "'" + order[i] + "' listed twice in metric order");
    seen[v.index] = true;
    pos[v.index] = i;
  }
  std::vector<std::vector<double>> canonical(n, std::vector<double>(n));
  for (std::size_t u = 0; u < n; ++u) {
    if (matrix[pos[u]].size() != n) throw Error(ErrorCode::InvalidMetricShape, "metric matrix is not square");
    for (std::size_t v = 0; v < n; ++v) canonical[u][v] = matrix[pos[u]][pos[v]];
  }
  return validate_vertex_metric(complex, canonical, C, qi);
}

Json metric_to_json(const SimplicialComplex& complex, const VertexMetric& metric) {
  Json j;
  j["type"] = "explicit";
  j["order"] = complex.labels();
  j["matrix"] = metric.matrix();
  if (auto qi = metric.qi()) {
    j["A"] = qi->A;
    j["B"] = qi->B;
  }
  if (auto c = metric.supplied_constant()) j["C"] = *c;
  return j;
}

BarycentricPoint point_from_json(const SimplicialComplex& complex, const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "a point must be a JSON object of vertex weights");
  std::map<std::string, double> weights;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw Error(ErrorCode::ParseError, "weight of '" + key + "' must be a number");
    weights[key] = value.get<double>();
  }
  return make_point(complex, weights);
}

Json point_to_json(const SimplicialComplex& complex, const BarycentricPoint& p) {
  Json j = Json::object();
  for (const auto& [v, w] : p.entries()) j[complex.label(v)] = w;
  return j;
}

Json simplex_to_json(const SimplicialComplex& complex, const Simplex& s) {
  Json j = Json::array();
  for (VertexId v : s) j.push_back(complex.label(v));
  return j;
}

Json witness_to_json(const SimplicialComplex& complex, const PathWitness& w) {
  Json j;
  Json points = Json::array();
  for (const auto& p : w.points) points.push_back(point_to_json(complex, p));
  Json carriers = Json::array();
  for (const auto& s : w.carriers) carriers.push_back(simplex_to_json(complex, s));
  j["points"] = std::move(points);
  j["carriers"] = std::move(carriers);
  j["length"] = w.length;
  return j;
}

Json report_to_json(const ProbeReport& r) {
  Json j;
  j["configuration"] = r.configuration;
  Json table = Json::array();
  for (const auto& [d, v] : r.table) table.push_back({d, v});
  j["table"] = std::move(table);
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = std::move(params);
  j["verdict"] = r.verdict;
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

}  // namespace metext
