#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unirank/format.hpp"
#include "unirank/ranking.hpp"

namespace unirank {

inline constexpr std::size_t kDefaultMinN = 3;

/// Fractional ranks, ties sharing the mean of the positions they span
/// (1-based, ascending: the smallest value gets rank 1).
std::vector<double> midranks(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of midranks.
///
/// Returns nullopt when n < min_n. Throws UndefinedCorrelation when either
/// list has no variation, std::invalid_argument when the sizes differ.
std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y,
                                   std::size_t min_n = kDefaultMinN);

/// Outcome of a correlation inside a report: a value, too few institutions,
/// or undefined because one side has no variation.
struct Rho {
  enum class Status { value, insufficient, undefined };
  Status status = Status::insufficient;
  double value = 0.0;

  static Rho of(double v) { return Rho{Status::value, v}; }
  static Rho insufficient() { return Rho{Status::insufficient, 0.0}; }
  static Rho undefined() { return Rho{Status::undefined, 0.0}; }

  /// 3 decimals, "*" when insufficient, "undefined" when undefined.
  std::string str() const;
};

enum class MissingNationalPolicy {
  strict,  // an internationally ranked institution absent nationally is an error
  warn,    // counted as not coinciding, with a warning
};

std::string_view to_string(MissingNationalPolicy policy);

struct Agreement {
  Fraction fraction;                      // never reduced: 2/6 stays 2/6
  std::vector<std::string> missing_national;
};

/// Share of the s institutions in the (system-restricted) international table
/// whose national rank is <= s. National ranks are the table's own rank values
/// (effective rank for intervals); a tie group straddling s counts the members
/// whose rank is <= s.
Agreement agreement_level(const RankingTable& international, const RankingTable& national,
                          MissingNationalPolicy policy = MissingNationalPolicy::warn);

struct ConcordanceOptions {
  std::size_t min_n = kDefaultMinN;
  MissingNationalPolicy missing_national = MissingNationalPolicy::warn;
};

struct ConcordancePair {
  std::string source_field;
  std::string target_field;
  std::size_t n = 0;  // institutions ranked on both sides
  Rho rho;
  Fraction agreement;
  std::vector<std::string> warnings;
};

/// Restricts `international` to `system_set`, joins with `national` on
/// institution id, and computes rho (international effective rank against
/// national rank) and the agreement level.
ConcordancePair compare_pair(const RankingTable& international, const RankingTable& national,
                             const std::set<std::string>& system_set, const ConcordanceOptions& options = {});

struct AggregateAgreement {
  Fraction pooled;             // sum of numerators / sum of denominators
  Fraction mean_of_fractions;  // unweighted mean of the pair fractions, reduced
  std::size_t pairs_used = 0;  // pairs with a non-zero denominator
};

/// Throws InputError when the pairs have a zero total denominator.
AggregateAgreement aggregate_agreement(std::span<const ConcordancePair> pairs);

struct CrosswalkPair {
  std::string source_system;
  std::string source_field;
  std::string target_system;
  std::string target_field;

  bool operator==(const CrosswalkPair&) const = default;
};

/// Field matches between systems; a source field may map to several targets.
struct FieldCrosswalk {
  std::vector<CrosswalkPair> pairs;  // file order, no duplicates
};

FieldCrosswalk read_crosswalk(std::istream& in, const std::string& source);
FieldCrosswalk load_crosswalk(const std::filesystem::path& path);

/// Ranking tables keyed by (system, field).
class TableIndex {
 public:
  /// Throws InputError when (system, field) is already present.
  void add(RankingTable table);
  const RankingTable* find(const std::string& system, const std::string& field) const;
  std::set<std::string> institutions_of_system(const std::string& system) const;
  std::size_t size() const { return tables_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, RankingTable> tables_;
};

struct ConcordanceReport {
  std::string source_system;
  std::string target_system;
  std::vector<ConcordancePair> pairs;
  std::vector<CrosswalkPair> unresolved;
  std::optional<AggregateAgreement> aggregate;  // absent when every denominator is zero
};

/// One report per (source system, target system), in order of first
/// appearance in the crosswalk. Unresolvable pairs are listed, not fatal;
/// a crosswalk with no resolvable pair at all throws InputError.
std::vector<ConcordanceReport> run_crosswalk(const FieldCrosswalk& crosswalk, const TableIndex& tables,
                                             const std::set<std::string>& system_set,
                                             const ConcordanceOptions& options = {});

/// source_field,target_field,n,rho,agreement_num,agreement_den,agreement_decimal
/// followed by an aggregate footer block.
void write_report(std::ostream& out, const ConcordanceReport& report);

}  // namespace unirank
