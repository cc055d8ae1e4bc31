#pragma once

// Tabular output in CSV (RFC 4180 style, LF endings, mandatory header) or JSON
// ({"meta": ..., "data": [row objects]}).

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace thermamp {

inline constexpr std::string_view kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

Format parse_format(std::string_view text);

/// Shortest representation that round-trips (never more than 17 significant
/// digits). Non-finite values print as nan / inf / -inf.
std::string format_double(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

void write_csv(std::ostream& os, const Table& table);

/// Rows as objects keyed by column name; non-finite doubles become null.
Json table_to_json(const Table& table);

void write_table(std::ostream& os, const Table& table, Format format, const Json& meta);

}  // namespace thermamp
