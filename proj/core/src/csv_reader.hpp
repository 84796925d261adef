#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "ringpairs/error.hpp"

namespace ringpairs::detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Numeric table with a mandatory header whose leading columns match `expected`.
struct NumericTable {
  std::vector<std::vector<double>> rows;
};

inline NumericTable read_numeric_csv(const std::filesystem::path& path,
                                     const std::vector<std::string_view>& expected) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  NumericTable table;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split_fields(t);
    if (!header_seen) {
      if (fields.size() < expected.size()) fail("header has too few columns");
      for (std::size_t i = 0; i < expected.size(); ++i)
        if (fields[i] != expected[i]) fail("expected column '" + std::string(expected[i]) + "'");
      header_seen = true;
      continue;
    }
    if (fields.size() < expected.size()) fail("row has too few columns");
    std::vector<double> row(expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto f = fields[i];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[i]);
      if (ec != std::errc() || ptr != f.data() + f.size()) fail("malformed number '" + std::string(f) + "'");
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw IoError(path.string() + ": missing header row");
  return table;
}

}  // namespace ringpairs::detail
