#include "cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ringpairs/error.hpp"

namespace ringpairs::cli {

void Table::add(std::vector<Field> row) {
  if (row.size() != header.size()) throw std::logic_error("row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("no column " + name);
}

double Table::number(std::size_t row, const std::string& name) const {
  const auto& f = rows.at(row).at(column(name));
  if (auto d = std::get_if<double>(&f)) return *d;
  if (auto i = std::get_if<long long>(&f)) return static_cast<double>(*i);
  throw std::invalid_argument("column " + name + " is not numeric");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string format_field(const Field& f) {
  if (auto d = std::get_if<double>(&f)) return format_double(*d);
  if (auto i = std::get_if<long long>(&f)) return std::to_string(*i);
  return std::get<std::string>(f);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_field(row[i]);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const Table& table) { write_text(path, to_csv(table)); }

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) { write_text(path, doc.dump(2) + "\n"); }

}  // namespace ringpairs::cli
