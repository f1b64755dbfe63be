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

#ifndef PPW_IO_HPP_
#define PPW_IO_HPP_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ppw/counting_measure.hpp"
#include "ppw/matrix.hpp"
#include "ppw/pp_wasserstein.hpp"

namespace ppw {

// --- Counting measures as JSON Lines -------------------------------------
//
// One measure per line. A line is either a bare array of points or an
// object {"points": [...], "weight": w}. Scalar spaces (interval, finite
// metric) use numbers as points; boxes use d-element arrays:
//
//   [0.5, 1.0, 3.8]
//   [[0.1, 0.2], [0.7, 0.9]]
//   {"points": [0.25], "weight": 0.5}

CountingMeasure measure_from_json(const nlohmann::json& points, int dim);
nlohmann::json measure_to_json(const CountingMeasure& mu);

struct MeasureFile {
  std::vector<CountingMeasure> measures;
  // Present when every line carried a weight.
  std::optional<std::vector<double>> weights;
};

MeasureFile read_measures_jsonl(std::istream& in, int dim);
MeasureFile read_measures_jsonl(const std::filesystem::path& path, int dim);
void write_measures_jsonl(std::ostream& out, const std::vector<CountingMeasure>& measures);

// Uniform law unless the file carries weights, which are normalised by their sum.
EmpiricalLaw read_law_jsonl(const std::filesystem::path& path, int dim);

// Square distance table, one comma-separated row per line.
Matrix read_matrix_csv(const std::filesystem::path& path);

// --- CSV ------------------------------------------------------------------

// 17 significant digits, %.17g style.
std::string format_double(double v);

// RFC 4180 writer with a mandatory header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& fields);
  std::size_t columns() const { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws IoError if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

std::ofstream open_for_write(const std::filesystem::path& path);

}  // namespace ppw

#endif  // PPW_IO_HPP_
