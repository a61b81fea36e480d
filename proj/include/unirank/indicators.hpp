#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "unirank/corpus.hpp"

namespace unirank {

/// The six primary indicators of one institution inside one field corpus.
struct IndicatorSet {
  std::string institution_id;
  std::int64_t ndoc = 0;   // papers
  std::int64_t ncit = 0;   // citations summed over those papers
  std::int64_t h = 0;      // h-index of the same paper set
  double pct_q1 = 0.0;     // share of papers in a first-quartile journal, in [0,1]
  double acit = 0.0;       // ncit / ndoc
  double topcit = 0.0;     // share of papers at or above the field's top-10% threshold

  bool operator==(const IndicatorSet&) const = default;
};

/// Citation count marking the top 10% of a field's pooled paper set.
struct FieldCitationThreshold {
  std::string field_name;
  std::size_t pool_size = 0;
  std::int64_t threshold = 0;
};

/// Largest h such that at least h of the counts are >= h.
std::int64_t h_index(std::span<const std::int64_t> citations);

/// ceil(0.10 * pool_size), computed in integers.
constexpr std::size_t top_decile_size(std::size_t pool_size) { return (pool_size + 9) / 10; }

/// Threshold over an arbitrary citation pool: the count at descending rank
/// top_decile_size(N), or 0 for an empty pool.
FieldCitationThreshold citation_threshold(std::span<const std::int64_t> pooled, std::string field_name = {});

/// Threshold over every paper of the field corpus, all institutions pooled.
FieldCitationThreshold top10_threshold(const Corpus& field_corpus, std::string field_name = {});

/// How a multi-category journal decides whether a paper is first quartile.
enum class Q1Policy {
  any_relevant,  // Q1 in at least one category that belongs to the evaluated field
  best_all,      // Q1 in any of the journal's categories
};

enum class MissingQuartilePolicy {
  strict,  // a missing (category, year) quartile is an error
  warn,    // treated as not Q1 and tallied
};

std::string_view to_string(Q1Policy policy);
std::string_view to_string(MissingQuartilePolicy policy);
Q1Policy parse_q1_policy(const std::string& text);

struct IndicatorOptions {
  Q1Policy q1_policy = Q1Policy::any_relevant;
  MissingQuartilePolicy missing_quartile = MissingQuartilePolicy::warn;
};

struct FieldIndicators {
  std::map<std::string, IndicatorSet> by_institution;  // institutions with ndoc > 0 only
  std::size_t quartile_misses = 0;                     // papers with at least one missing lookup
};

/// Whether one paper counts as first quartile under `options`. Returns the
/// verdict and whether any needed lookup was missing (warn mode only; strict
/// mode throws QuartileLookupError).
struct Q1Verdict {
  bool q1 = false;
  bool missing = false;
};
Q1Verdict is_first_quartile(const PublicationRecord& paper, const JournalProfile& journal,
                            const std::set<std::string>& field_categories, const IndicatorOptions& options);

/// Per-institution indicators. `threshold` must come from the same corpus and
/// `field_categories` are the evaluated field's (normalized) category codes.
FieldIndicators compute_indicators(const Corpus& field_corpus, const FieldCitationThreshold& threshold,
                                   const std::set<std::string>& field_categories,
                                   const IndicatorOptions& options = {});

}  // namespace unirank
