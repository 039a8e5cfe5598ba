#pragma once

#include <string>

#include <json.hpp>

#include "metext/complex.hpp"
#include "metext/path_metric.hpp"
#include "metext/probes.hpp"
#include "metext/vertex_metric.hpp"

namespace metext {

using Json = nlohmann::ordered_json;

/// Throws ParseError on malformed text or a missing file.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"vertices": [...], "maximal_simplices": [[...], ...]}
Json complex_to_json(const SimplicialComplex& complex);
SimplicialComplex complex_from_json(const Json& j);

/// {"type": "word"} or {"type": "explicit", "order": [...], "matrix": [[...]],
/// "A": a, "B": b, "C": c} with the constants optional. A word metric
/// carries (A, B) = (1, 0). Explicit matrices are reordered to the complex's
/// vertex order and validated; violations are returned, not thrown.
MetricValidation metric_from_json(const SimplicialComplex& complex, const WordMetricTable& word, const Json& j);
Json metric_to_json(const SimplicialComplex& complex, const VertexMetric& metric);

/// {"u": 0.25, "v": 0.75}
BarycentricPoint point_from_json(const SimplicialComplex& complex, const Json& j);
Json point_to_json(const SimplicialComplex& complex, const BarycentricPoint& p);

Json simplex_to_json(const SimplicialComplex& complex, const Simplex& s);
Json witness_to_json(const SimplicialComplex& complex, const PathWitness& w);
Json report_to_json(const ProbeReport& r);

}  // namespace metext
