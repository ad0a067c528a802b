#include "io.hpp"

#include <fstream>
#include <sstream>

namespace dareal::cli {

namespace {

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

Index require_index(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(where + ": '" + key + "' must be a nonnegative integer");
  return static_cast<Index>(v.get<long long>());
}

std::vector<ComplexMatrix> parse_block_list(const Json& j, Index d, Index rows,
                                            Index cols, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != d)
    throw ParseError(where + ": expected " + std::to_string(d) + " blocks");
  std::vector<ComplexMatrix> blocks;
  for (size_t k = 0; k < j.size(); ++k) {
    ComplexMatrix m = parse_matrix(j[k], where + "[" + std::to_string(k) + "]");
    if (m.rows() != rows || m.cols() != cols)
      throw DimensionMismatch(where + "[" + std::to_string(k) + "]: expected " +
                              std::to_string(rows) + "x" + std::to_string(cols) +
                              ", got " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
    blocks.push_back(std::move(m));
  }
  return blocks;
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": complex scalars are two-element arrays [re, im]");
  Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ParseError(where + ": non-finite entry");
  return z;
}

ComplexMatrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  Index cols = -1;
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array())
      throw ParseError(where + ": row " + std::to_string(r) + " is not an array");
    if (cols < 0)
      cols = static_cast<Index>(j[r].size());
    else if (static_cast<Index>(j[r].size()) != cols)
      throw ParseError(where + ": ragged rows");
  }
  if (rows == 0) return ComplexMatrix(0, 0);
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = parse_complex(j[static_cast<size_t>(r)][static_cast<size_t>(c)],
                              where + "(" + std::to_string(r) + "," +
                                  std::to_string(c) + ")");
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Colligation parse_colligation(const Json& j, const std::string& where) {
  Index d = require_index(j, "d", where);
  Index nx = require_index(j, "dimX", where);
  Index nu = require_index(j, "dimU", where);
  Index ny = require_index(j, "dimY", where);
  auto a = parse_block_list(require(j, "A", where), d, nx, nx, where + ".A");
  auto b = parse_block_list(require(j, "B", where), d, nx, nu, where + ".B");
  ComplexMatrix c = parse_matrix(require(j, "C", where), where + ".C");
  ComplexMatrix dd = parse_matrix(require(j, "D", where), where + ".D");
  if (c.rows() != ny || c.cols() != nx)
    throw DimensionMismatch(where + ".C: expected " + std::to_string(ny) + "x" +
                            std::to_string(nx));
  if (dd.rows() != ny || dd.cols() != nu)
    throw DimensionMismatch(where + ".D: expected " + std::to_string(ny) + "x" +
                            std::to_string(nu));
  return Colligation(OperatorTuple(std::move(a)), std::move(b), std::move(c),
                     std::move(dd));
}

Json colligation_to_json(const Colligation& c) {
  Json j;
  j["d"] = c.d();
  j["dimX"] = c.dim_x();
  j["dimU"] = c.dim_u();
  j["dimY"] = c.dim_y();
  Json a = Json::array(), b = Json::array();
  for (const auto& blk : c.A.blocks) a.push_back(matrix_to_json(blk));
  for (const auto& blk : c.B) b.push_back(matrix_to_json(blk));
  j["A"] = std::move(a);
  j["B"] = std::move(b);
  j["C"] = matrix_to_json(c.C);
  j["D"] = matrix_to_json(c.D);
  return j;
}

OutputPair parse_pair(const Json& j, const std::string& where) {
  if (j.contains("B") || j.contains("D"))
    throw ParseError(where + ": pair files carry only C and A (no B, D)");
  Index d = require_index(j, "d", where);
  Index nx = require_index(j, "dimX", where);
  Index ny = require_index(j, "dimY", where);
  auto a = parse_block_list(require(j, "A", where), d, nx, nx, where + ".A");
  ComplexMatrix c = parse_matrix(require(j, "C", where), where + ".C");
  if (c.rows() != ny || c.cols() != nx)
    throw DimensionMismatch(where + ".C: expected " + std::to_string(ny) + "x" +
                            std::to_string(nx));
  return OutputPair(std::move(c), OperatorTuple(std::move(a)));
}

Json pair_to_json(const OutputPair& p) {
  Json j;
  j["d"] = p.d();
  j["dimX"] = p.dim_x();
  j["dimY"] = p.dim_y();
  Json a = Json::array();
  for (const auto& blk : p.A.blocks) a.push_back(matrix_to_json(blk));
  j["A"] = std::move(a);
  j["C"] = matrix_to_json(p.C);
  return j;
}

std::vector<BallPoint> parse_points(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": point files are arrays of d-vectors");
  std::vector<BallPoint> pts;
  for (size_t k = 0; k < j.size(); ++k) {
    const Json& row = j[k];
    if (!row.is_array())
      throw ParseError(where + "[" + std::to_string(k) + "]: expected a d-vector");
    std::vector<Complex> coords;
    for (size_t c = 0; c < row.size(); ++c)
      coords.push_back(parse_complex(row[c], where + "[" + std::to_string(k) + "][" +
                                                 std::to_string(c) + "]"));
    pts.push_back(BallPoint::closure(std::move(coords)));
  }
  return pts;
}

ComplexMatrix parse_q(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("Q")) return parse_matrix(j.at("Q"), where + ".Q");
  return parse_matrix(j, where);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << text;
}

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = c.status == CheckRecord::Status::Pass   ? "pass"
                   : c.status == CheckRecord::Status::Fail ? "fail"
                                                           : "skip";
    jc["residual"] = c.residual;
    jc["details"] = c.details;
    checks.push_back(std::move(jc));
  }
  Json j;
  j["checks"] = std::move(checks);
  j["overall"] = r.overall_pass() ? "pass" : "fail";
  return j;
}

std::string render_report_text(const Report& r) {
  std::ostringstream out;
  for (const auto& c : r.checks) {
    const char* tag = c.status == CheckRecord::Status::Pass   ? "PASS"
                      : c.status == CheckRecord::Status::Fail ? "FAIL"
                                                              : "SKIP";
    out << "[" << tag << "] " << c.name;
    if (c.status != CheckRecord::Status::Skip) {
      out.precision(3);
      out << std::scientific << "  residual=" << c.residual;
    }
    if (!c.details.empty()) out << "  (" << c.details << ")";
    out << "\n";
  }
  out << (r.overall_pass() ? "overall: pass" : "overall: FAIL") << "\n";
  return out.str();
}

}  // namespace dareal::cli
