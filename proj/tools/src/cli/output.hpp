#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace ringpairs::cli {

using Field = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Field>> rows;

  void add(std::vector<Field> row);
  // Index of a header column; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// Nine significant digits, scientific.
std::string format_double(double v);
std::string format_field(const Field& f);

std::string to_csv(const Table& table);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const Table& table);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace ringpairs::cli
