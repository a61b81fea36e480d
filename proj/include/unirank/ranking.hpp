#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unirank/corpus.hpp"
#include "unirank/ifq2a.hpp"

namespace unirank {

/// A published league-table position: exact ("89") or an interval ("201-300").
class RankValue {
 public:
  /// Throws InputError when position < 1.
  static RankValue exact(std::int64_t position);
  /// Throws InputError when lo < 1 or lo > hi.
  static RankValue interval(std::int64_t lo, std::int64_t hi);
  /// Parses "N" or "LO-HI".
  static RankValue parse(std::string_view text);

  bool is_exact() const { return exact_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

  /// Midpoint of the interval, (lo + hi) / 2; the position itself when exact.
  /// Always a half-integer, so the double is exact.
  double effective_rank() const { return static_cast<double>(lo_ + hi_) / 2.0; }
  /// 2 * effective_rank as an integer, for exact comparisons.
  std::int64_t twice_effective_rank() const { return lo_ + hi_; }

  std::string str() const;

  bool operator==(const RankValue&) const = default;

 private:
  RankValue(bool exact, std::int64_t lo, std::int64_t hi) : exact_(exact), lo_(lo), hi_(hi) {}

  bool exact_ = true;
  std::int64_t lo_ = 1;
  std::int64_t hi_ = 1;
};

struct RankEntry {
  std::string institution_id;
  RankValue rank;
  std::optional<double> score;       // IFQ2A when produced by build_ranking
  std::optional<double> local_rank;  // midrank 1..m after restrict_to_system
};

struct RankingTable {
  std::string system_name;
  std::string field_name;
  std::optional<TimeWindow> window;
  std::vector<RankEntry> entries;  // effective rank ascending

  const RankEntry* find(const std::string& institution_id) const;
  std::set<std::string> institutions() const;
};

/// Competition ranking ("1,2,2,4") by IFQ2A descending. Tied scores share a
/// rank; display order inside a tie follows institution id and never changes
/// rank values. Throws std::invalid_argument on an empty score map.
RankingTable build_ranking(const std::map<std::string, IndexScore>& scores, std::string system_name,
                           std::string field_name, std::optional<TimeWindow> window);

/// Reads system_name,field_name,institution_id,rank[,ifq2a]; one table per
/// (system, field) pair, in first-appearance order. Entries are sorted by
/// effective rank, then institution id.
std::vector<RankingTable> read_rankings(std::istream& in, const std::string& source);
std::vector<RankingTable> load_rankings(const std::filesystem::path& path);

/// Like load_rankings but the file must hold exactly one table.
RankingTable load_external_ranking(const std::filesystem::path& path);

/// Entries whose institution is in `institutions`, original rank values kept
/// and a local midrank attached. Relative order is preserved.
RankingTable restrict_to_system(const RankingTable& table, const std::set<std::string>& institutions);

/// system_name,field_name,institution_id,rank,ifq2a (score printed with 6 decimals).
void write_ranking(std::ostream& out, const RankingTable& table);

}  // namespace unirank
