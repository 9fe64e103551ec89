#include "framescale/io.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace framescale {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& token, int row) {
  const std::string t = trim(token);
  if (t.empty())
    throw InputError("empty entry at row " + std::to_string(row));
  try {
    size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size())
      throw InputError("non-numeric entry '" + t + "' at row " +
                       std::to_string(row));
    return v;
  } catch (const std::logic_error&) {
    throw InputError("non-numeric entry '" + t + "' at row " +
                     std::to_string(row));
  }
}

Frame parse_csv(std::istream& in, const Tolerances& tol) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) row.push_back(parse_number(token, lineno));
    if (!rows.empty() && row.size() != rows.front().size())
      throw InputError("ragged row at line " + std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("empty frame file");

  MatrixXd m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return Frame(std::move(m), tol);
}

Frame parse_json(std::istream& in, const Tolerances& tol) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("vectors"))
    throw InputError("JSON frame needs \"dim\" and \"vectors\"");
  const int dim = j["dim"].get<int>();
  const auto& vectors = j["vectors"];
  if (!vectors.is_array() || vectors.empty())
    throw InputError("\"vectors\" must be a nonempty array");

  MatrixXd m(static_cast<Eigen::Index>(vectors.size()), dim);
  int row = 0;
  for (const auto& vec : vectors) {
    if (!vec.is_array() || static_cast<int>(vec.size()) != dim)
      throw InputError("vector of wrong dimension at row " +
                       std::to_string(row + 1));
    for (int k = 0; k < dim; ++k) {
      if (!vec[k].is_number())
        throw InputError("non-numeric entry at row " + std::to_string(row + 1));
      m(row, k) = vec[k].get<double>();
    }
    ++row;
  }
  return Frame(std::move(m), tol);
}

}  // namespace

Frame parse_frame(std::istream& in, FrameFormat format, const Tolerances& tol) {
  if (format == FrameFormat::Auto) {
    int c = in.peek();
    while (c != EOF && std::isspace(c)) {
      in.get();
      c = in.peek();
    }
    format = (c == '{') ? FrameFormat::Json : FrameFormat::Csv;
  }
  return format == FrameFormat::Json ? parse_json(in, tol) : parse_csv(in, tol);
}

Frame parse_frame_file(const std::string& path, FrameFormat format,
                       const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  if (format == FrameFormat::Auto) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
      format = FrameFormat::Json;
    else if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
      format = FrameFormat::Csv;
  }
  return parse_frame(in, format, tol);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string frame_to_csv(const Frame& frame) {
  std::string out;
  for (int j = 0; j < frame.size(); ++j) {
    for (int k = 0; k < frame.dim(); ++k) {
      if (k) out += ',';
      out += format_double(frame.rows()(j, k));
    }
    out += '\n';
  }
  return out;
}

}  // namespace framescale
