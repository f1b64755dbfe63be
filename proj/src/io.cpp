// Copyright 2026 The ppw Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppw/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "ppw/errors.hpp"

namespace ppw {
namespace {

std::string quote_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one logical CSV record; handles quoted fields spanning lines.
bool next_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false, any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (in_quotes) throw IoError("unterminated quoted CSV field");
  if (any) fields.push_back(std::move(field));
  return any;
}

}  // namespace

CountingMeasure measure_from_json(const nlohmann::json& points, int dim) {
  if (!points.is_array()) throw IoError("a counting measure must be a JSON array of points");
  CountingMeasure mu(dim);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (const auto& p : points) {
    if (dim == 1 && p.is_number()) {
      mu.add(p.get<double>());
      continue;
    }
    if (!p.is_array() || p.size() != static_cast<std::size_t>(dim))
      throw IoError("point " + p.dump() + " does not have " + std::to_string(dim) + " coordinates");
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!p[k].is_number()) throw IoError("non-numeric coordinate in " + p.dump());
      x[k] = p[k].get<double>();
    }
    mu.add(x);
  }
  return mu;
}

nlohmann::json measure_to_json(const CountingMeasure& mu) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto x = mu.point(i);
    if (mu.dim() == 1)
      out.push_back(x[0]);
    else
      out.push_back(std::vector<double>(x.begin(), x.end()));
  }
  return out;
}

MeasureFile read_measures_jsonl(std::istream& in, int dim) {
  MeasureFile file;
  std::vector<double> weights;
  std::size_t weighted = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw IoError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.is_object()) {
      if (!j.contains("points")) throw IoError("line " + std::to_string(lineno) + ": missing \"points\"");
      file.measures.push_back(measure_from_json(j["points"], dim));
      if (j.contains("weight")) {
        weights.push_back(j["weight"].get<double>());
        ++weighted;
      }
    } else {
      file.measures.push_back(measure_from_json(j, dim));
    }
  }
  if (weighted != 0) {
    if (weighted != file.measures.size())
      throw IoError("either every line or no line may carry a weight");
    file.weights = std::move(weights);
  }
  return file;
}

MeasureFile read_measures_jsonl(const std::filesystem::path& path, int dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_measures_jsonl(in, dim);
}

void write_measures_jsonl(std::ostream& out, const std::vector<CountingMeasure>& measures) {
  for (const auto& mu : measures) out << measure_to_json(mu).dump() << '\n';
}

EmpiricalLaw read_law_jsonl(const std::filesystem::path& path, int dim) {
  MeasureFile file = read_measures_jsonl(path, dim);
  if (file.measures.empty()) throw IoError(path.string() + " holds no measures");
  if (!file.weights) return EmpiricalLaw::uniform(std::move(file.measures));
  double total = 0.0;
  for (double w : *file.weights) total += w;
  for (double& w : *file.weights) w /= total;
  return EmpiricalLaw(std::move(file.measures), std::move(*file.weights));
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::vector<std::string> fields;
  while (next_record(in, fields)) {
    if (fields.size() == 1 && fields[0].find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> r;
    for (const auto& f : fields) {
      try {
        r.push_back(std::stod(f));
      } catch (const std::exception&) {
        throw IoError("non-numeric entry '" + f + "' in " + path.string());
      }
    }
    rows.push_back(std::move(r));
  }
  const std::size_t n = rows.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw IoError(path.string() + " is not a square matrix");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw IoError("CSV row width does not match the header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote_field(fields[i]);
  }
  out_ << "\r\n";
  if (!out_) throw IoError("CSV write failed");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw IoError("CSV column '" + name + "' not found");
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::vector<std::string> fields;
  if (!next_record(in, fields)) throw IoError("CSV file has no header row");
  t.header = fields;
  while (next_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != t.header.size()) throw IoError("CSV row width does not match the header");
    t.rows.push_back(fields);
  }
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace ppw
