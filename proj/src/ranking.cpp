#include "unirank/ranking.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "unirank/csv.hpp"
#include "unirank/error.hpp"
#include "unirank/format.hpp"

namespace unirank {

RankValue RankValue::exact(std::int64_t position) {
  if (position < 1) throw InputError("rank position must be >= 1, got " + std::to_string(position));
  return RankValue(true, position, position);
}

RankValue RankValue::interval(std::int64_t lo, std::int64_t hi) {
  if (lo < 1) throw InputError("rank interval lower bound must be >= 1, got " + std::to_string(lo));
  if (lo > hi) {
    throw InputError("rank interval " + std::to_string(lo) + "-" + std::to_string(hi) + " has lo > hi");
  }
  return RankValue(false, lo, hi);
}

RankValue RankValue::parse(std::string_view text) {
  const std::string t = csv::trim(text);
  const auto dash = t.find('-', 1);
  try {
    if (dash == std::string::npos) return exact(csv::parse_int(t, "rank", 0, "rank"));
    return interval(csv::parse_int(t.substr(0, dash), "rank", 0, "rank"),
                    csv::parse_int(t.substr(dash + 1), "rank", 0, "rank"));
  } catch (const InputError& e) {
    throw InputError("malformed rank '" + t + "': " + e.what());
  }
}

std::string RankValue::str() const {
  if (exact_) return std::to_string(lo_);
  return std::to_string(lo_) + "-" + std::to_string(hi_);
}

const RankEntry* RankingTable::find(const std::string& institution_id) const {
  for (const auto& e : entries) {
    if (e.institution_id == institution_id) return &e;
  }
  return nullptr;
}

std::set<std::string> RankingTable::institutions() const {
  std::set<std::string> out;
  for (const auto& e : entries) out.insert(e.institution_id);
  return out;
}

RankingTable build_ranking(const std::map<std::string, IndexScore>& scores, std::string system_name,
                           std::string field_name, std::optional<TimeWindow> window) {
  if (scores.empty()) throw std::invalid_argument("build_ranking: no scores");
  std::vector<const IndexScore*> order;
  order.reserve(scores.size());
  for (const auto& [_, s] : scores) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const IndexScore* a, const IndexScore* b) {
    if (a->ifq2a != b->ifq2a) return a->ifq2a > b->ifq2a;
    return a->institution_id < b->institution_id;
  });

  RankingTable table{std::move(system_name), std::move(field_name), window, {}};
  std::int64_t rank = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && order[i]->ifq2a != order[i - 1]->ifq2a) rank = static_cast<std::int64_t>(i) + 1;
    table.entries.push_back(RankEntry{order[i]->institution_id, RankValue::exact(rank), order[i]->ifq2a, {}});
  }
  return table;
}

namespace {

void sort_by_effective_rank(std::vector<RankEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.rank.twice_effective_rank() != b.rank.twice_effective_rank()) {
      return a.rank.twice_effective_rank() < b.rank.twice_effective_rank();
    }
    return a.institution_id < b.institution_id;
  });
}

}  // namespace

std::vector<RankingTable> read_rankings(std::istream& in, const std::string& source) {
  csv::Table csv_table(in, source);
  const auto c_system = csv_table.require_column("system_name");
  const auto c_field = csv_table.require_column("field_name");
  const auto c_inst = csv_table.require_column("institution_id");
  const auto c_rank = csv_table.require_column("rank");
  const bool has_score = csv_table.has_column("ifq2a");
  const auto c_score = has_score ? csv_table.require_column("ifq2a") : 0;

  std::vector<RankingTable> tables;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen;
  for (const auto& row : csv_table.rows()) {
    const std::string system = csv_table.cell(row, c_system);
    const std::string field = csv_table.cell(row, c_field);
    const std::string institution = csv_table.cell(row, c_inst);
    if (system.empty() || field.empty() || institution.empty()) {
      throw InputError(located(source, row.line, "empty system_name, field_name or institution_id"));
    }
    RankValue rank = RankValue::exact(1);
    try {
      rank = RankValue::parse(csv_table.cell(row, c_rank));
    } catch (const InputError& e) {
      throw InputError(located(source, row.line, e.what()));
    }
    std::optional<double> score;
    if (has_score) {
      const std::string text = csv_table.cell(row, c_score);
      if (!text.empty()) {
        try {
          std::size_t used = 0;
          score = std::stod(text, &used);
          if (used != text.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
          throw InputError(located(source, row.line, "invalid ifq2a value '" + text + "'"));
        }
      }
    }
    auto [seen_it, fresh] = seen.emplace(std::make_tuple(system, field, institution), row.line);
    if (!fresh) {
      throw InputError(located(source, row.line,
                               "duplicate institution '" + institution + "' in " + system + "/" + field +
                                   " (first at line " + std::to_string(seen_it->second) + ")"));
    }
    auto [it, inserted] = index.emplace(std::make_pair(system, field), tables.size());
    if (inserted) tables.push_back(RankingTable{system, field, std::nullopt, {}});
    tables[it->second].entries.push_back(RankEntry{institution, rank, score, {}});
  }
  for (auto& t : tables) sort_by_effective_rank(t.entries);
  return tables;
}

std::vector<RankingTable> load_rankings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return read_rankings(in, path.string());
}

RankingTable load_external_ranking(const std::filesystem::path& path) {
  auto tables = load_rankings(path);
  if (tables.size() != 1) {
    throw InputError(path.string() + ": expected exactly one (system, field) table, found " +
                     std::to_string(tables.size()));
  }
  return std::move(tables.front());
}

RankingTable restrict_to_system(const RankingTable& table, const std::set<std::string>& institutions) {
  RankingTable out{table.system_name, table.field_name, table.window, {}};
  for (const auto& e : table.entries) {
    if (institutions.contains(e.institution_id)) out.entries.push_back(e);
  }
  // Local midranks: entries are already in effective-rank order, so equal
  // effective ranks form contiguous runs.
  std::size_t i = 0;
  while (i < out.entries.size()) {
    std::size_t j = i;
    while (j + 1 < out.entries.size() &&
           out.entries[j + 1].rank.twice_effective_rank() == out.entries[i].rank.twice_effective_rank()) {
      ++j;
    }
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) out.entries[k].local_rank = mid;
    i = j + 1;
  }
  return out;
}

void write_ranking(std::ostream& out, const RankingTable& table) {
  csv::write_row(out, {"system_name", "field_name", "institution_id", "rank", "ifq2a"});
  for (const auto& e : table.entries) {
    csv::write_row(out, {table.system_name, table.field_name, e.institution_id, e.rank.str(),
                         e.score ? format_fixed(*e.score, 6) : std::string()});
  }
}

}  // namespace unirank
