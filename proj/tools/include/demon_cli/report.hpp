// Copyright 2026 The demon-fridge Authors
//
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

// report.hpp — fixed-precision JSON and CSV output

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace demon::cli {

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

// Serializes with every floating-point number at 17 significant digits.
// Non-finite numbers become null.
std::string to_json_text(const nlohmann::ordered_json& value, int indent = 2);

void write_text_file(const std::filesystem::path& path, const std::string& text);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(const std::string& s);
  CsvWriter& empty();
  void end_row();
  const std::string& text() const { return text_; }

 private:
  void separator();
  std::string text_;
  std::size_t columns_;
  std::size_t current_ = 0;
};

}  // namespace demon::cli
