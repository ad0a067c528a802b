#pragma once

#include <string>

#include <dareal/colligation.hpp>
#include <dareal/report.hpp>
#include <dareal/types.hpp>

#include "json.hpp"

namespace dareal::cli {

using Json = nlohmann::ordered_json;

// Complex scalars are two-element arrays [re, im]; matrices are row-major
// nested arrays of complex scalars.
Complex parse_complex(const Json& j, const std::string& where);
ComplexMatrix parse_matrix(const Json& j, const std::string& where);
Json matrix_to_json(const ComplexMatrix& m);

// colligation files: {d, dimX, dimU, dimY, A: [A1..Ad], B: [B1..Bd], C, D}
Colligation parse_colligation(const Json& j, const std::string& where);
Json colligation_to_json(const Colligation& c);

// pair files: {d, dimX, dimY, A: [A1..Ad], C}  (no B, no D)
OutputPair parse_pair(const Json& j, const std::string& where);
Json pair_to_json(const OutputPair& p);

// point files: arrays of d-vectors of complex scalars
std::vector<BallPoint> parse_points(const Json& j, const std::string& where);

// Q files: either a bare matrix or {"Q": matrix}
ComplexMatrix parse_q(const Json& j, const std::string& where);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json report_to_json(const Report& r);
std::string render_report_text(const Report& r);

}  // namespace dareal::cli
