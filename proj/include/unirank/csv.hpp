#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace unirank::csv {

struct Row {
  std::size_t line = 0;  // 1-based physical line where the row starts
  std::vector<std::string> cells;
};

/// A parsed CSV document with a mandatory header row.
///
/// Quoted cells follow RFC 4180 (doubled quotes, embedded commas and newlines).
/// Lines whose first character is '#' are comments and skipped, which lets the
/// reader consume files produced by this tool (they carry a metadata header).
/// A leading UTF-8 byte-order mark is dropped. Blank lines are skipped.
class Table {
 public:
  Table(std::istream& in, std::string source);

  const std::string& source() const { return source_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }

  /// Column index of `name`; throws InputError naming the missing column.
  std::size_t require_column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  /// Trimmed cell text; throws InputError when the row is too short.
  std::string cell(const Row& row, std::size_t column) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

Table read_file(const std::filesystem::path& path);

/// Strips leading and trailing ASCII whitespace.
std::string trim(std::string_view text);

/// Base-10 integer with no trailing garbage; throws InputError at (source, line).
std::int64_t parse_int(std::string_view text, const std::string& source, std::size_t line,
                       std::string_view what);

/// Quotes a cell when it contains a comma, quote, or line break.
std::string escape(std::string_view cell);

/// Writes one CSV line terminated by '\n'.
void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace unirank::csv
