#include "unirank/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "unirank/error.hpp"

namespace unirank::csv {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

// Splits the whole stream into records. Tracks the physical line each record starts on.
std::vector<Row> tokenize(std::istream& in, const std::string& source) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() >= 3 && data.compare(0, 3, "\xEF\xBB\xBF") == 0) data.erase(0, 3);

  std::vector<Row> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = data.size();
  while (i < n) {
    if (data[i] == '#') {
      while (i < n && data[i] != '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    Row row;
    row.line = line;
    std::string cell;
    bool quoted = false;
    bool cell_was_quoted = false;
    bool done = false;
    while (!done) {
      if (i >= n) {
        if (quoted) throw InputError(located(source, row.line, "unterminated quoted cell"));
        row.cells.push_back(std::move(cell));
        break;
      }
      char c = data[i++];
      if (quoted) {
        if (c == '"') {
          if (i < n && data[i] == '"') {
            cell.push_back('"');
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          cell.push_back(c);
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!cell_was_quoted && std::all_of(cell.begin(), cell.end(), is_space)) {
            cell.clear();
            quoted = true;
            cell_was_quoted = true;
          } else {
            cell.push_back(c);
          }
          break;
        case ',':
          row.cells.push_back(std::move(cell));
          cell.clear();
          cell_was_quoted = false;
          break;
        case '\n':
          ++line;
          row.cells.push_back(std::move(cell));
          done = true;
          break;
        case '\r':
          break;
        default:
          cell.push_back(c);
      }
    }
    const bool blank = row.cells.size() == 1 &&
                       std::all_of(row.cells[0].begin(), row.cells[0].end(), is_space);
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

Table::Table(std::istream& in, std::string source) : source_(std::move(source)) {
  std::vector<Row> rows = tokenize(in, source_);
  if (rows.empty()) throw InputError(source_ + ": missing header row");
  for (const auto& name : rows.front().cells) header_.push_back(trim(name));
  rows_.assign(std::make_move_iterator(rows.begin() + 1), std::make_move_iterator(rows.end()));
}

bool Table::has_column(std::string_view name) const {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::size_t Table::require_column(std::string_view name) const {
  auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) {
    throw InputError(source_ + ": missing required column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header_.begin());
}

std::string Table::cell(const Row& row, std::size_t column) const {
  if (column >= row.cells.size()) {
    throw InputError(located(source_, row.line,
                             "expected " + std::to_string(header_.size()) + " cells, got " +
                                 std::to_string(row.cells.size())));
  }
  return trim(row.cells[column]);
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return Table(in, path.string());
}

std::int64_t parse_int(std::string_view text, const std::string& source, std::size_t line,
                       std::string_view what) {
  std::string t = trim(text);
  std::int64_t value = 0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value, 10);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw InputError(located(source, line, "invalid integer for " + std::string(what) + ": '" + t + "'"));
  }
  return value;
}

std::string escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos && (cell.empty() || cell.front() != '#')) {
    return std::string(cell);
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << escape(cells[i]);
  }
  out << '\n';
}

}  // namespace unirank::csv
