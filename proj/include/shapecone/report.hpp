#ifndef SHAPECONE_REPORT_HPP
#define SHAPECONE_REPORT_HPP

#include "shapecone/hyperbolic.hpp"

#include "json.hpp"

namespace shapecone {

using Json = nlohmann::ordered_json;

// Byte-stable serialization: floats with fixed %.17g, 2-space indent.
std::string dump_report(const Json& j);

Json report_gale(const VectorConfiguration& cfg);
Json report_domains(const VectorConfiguration& cfg);
Json report_typecones(const VectorConfiguration& cfg);
Json report_qform(const VectorConfiguration& cfg);
Json report_shapespace(const VectorConfiguration& cfg);
Json report_oracle(const VectorConfiguration& cfg);

// Affine Gale diagram plus chamber sections; only for n - d = 3.
std::string svg_affine(const VectorConfiguration& cfg);

}  // namespace shapecone

#endif
