// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace marcinlab {

// Minimal comma-separated tables: plain tokens, no quoting.  Serialization is
// byte-stable so that equal data always produces equal files; parse followed
// by serialize reproduces the input bytes exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string serialize() const;
  static CsvTable parse(const std::string& text);
};

// %.17g rendering; round-trips doubles exactly.
std::string format_double(double x);
std::string format_int(long long x);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace marcinlab
