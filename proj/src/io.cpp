#include "thermamp/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "thermamp/error.hpp"

namespace thermamp {

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw Error(ErrorKind::InvalidArgument,
              "unknown format '" + std::string(text) + "' (expected csv|json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorKind::InvalidArgument, "row width does not match the header");
  }
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return csv_field(std::get<std::string>(c));
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_field(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << cell_text(row[i]);
    }
    os << '\n';
  }
}

Json table_to_json(const Table& table) {
  Json data = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c)) {
        obj[table.columns[i]] = std::isfinite(*d) ? Json(*d) : Json(nullptr);
      } else if (const auto* n = std::get_if<long long>(&c)) {
        obj[table.columns[i]] = *n;
      } else {
        obj[table.columns[i]] = std::get<std::string>(c);
      }
    }
    data.push_back(std::move(obj));
  }
  return data;
}

void write_table(std::ostream& os, const Table& table, Format format, const Json& meta) {
  if (format == Format::Csv) {
    write_csv(os, table);
    return;
  }
  Json doc = Json::object();
  doc["meta"] = meta;
  doc["data"] = table_to_json(table);
  os << doc.dump(2) << '\n';
}

}  // namespace thermamp
