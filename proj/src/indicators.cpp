#include "unirank/indicators.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "unirank/error.hpp"

namespace unirank {

std::int64_t h_index(std::span<const std::int64_t> citations) {
  std::vector<std::int64_t> sorted(citations.begin(), citations.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::int64_t h = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < static_cast<std::int64_t>(i + 1)) break;
    h = static_cast<std::int64_t>(i + 1);
  }
  return h;
}

FieldCitationThreshold citation_threshold(std::span<const std::int64_t> pooled, std::string field_name) {
  FieldCitationThreshold out{std::move(field_name), pooled.size(), 0};
  if (pooled.empty()) return out;
  std::vector<std::int64_t> sorted(pooled.begin(), pooled.end());
  const std::size_t k = top_decile_size(sorted.size());
  // k-th largest element sits at index k - 1 of the descending order.
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end(),
                   std::greater<>());
  out.threshold = sorted[k - 1];
  return out;
}

FieldCitationThreshold top10_threshold(const Corpus& field_corpus, std::string field_name) {
  std::vector<std::int64_t> pool;
  pool.reserve(field_corpus.size());
  for (const auto& p : field_corpus.publications()) pool.push_back(p.citations);
  return citation_threshold(pool, std::move(field_name));
}

std::string_view to_string(Q1Policy policy) {
  return policy == Q1Policy::any_relevant ? "any-relevant" : "best-all";
}

std::string_view to_string(MissingQuartilePolicy policy) {
  return policy == MissingQuartilePolicy::strict ? "strict" : "warn";
}

Q1Policy parse_q1_policy(const std::string& text) {
  if (text == "any-relevant") return Q1Policy::any_relevant;
  if (text == "best-all") return Q1Policy::best_all;
  throw ConfigError("unknown q1 policy '" + text + "' (expected any-relevant or best-all)");
}

Q1Verdict is_first_quartile(const PublicationRecord& paper, const JournalProfile& journal,
                            const std::set<std::string>& field_categories, const IndicatorOptions& options) {
  Q1Verdict verdict;
  bool consulted = false;
  for (const auto& cat : journal.categories()) {
    if (options.q1_policy == Q1Policy::any_relevant && !field_categories.contains(cat)) continue;
    consulted = true;
    const auto q = journal.find_quartile(cat, paper.year);
    if (!q) {
      if (options.missing_quartile == MissingQuartilePolicy::strict) {
        throw QuartileLookupError("record " + paper.record_id + ": journal " + journal.journal_id() +
                                  " has no quartile for category '" + cat + "' in " + std::to_string(paper.year));
      }
      verdict.missing = true;
      continue;
    }
    if (*q == 1) verdict.q1 = true;
  }
  if (!consulted) {
    // The journal shares no category with the field: nothing to look up.
    if (options.missing_quartile == MissingQuartilePolicy::strict) {
      throw QuartileLookupError("record " + paper.record_id + ": journal " + journal.journal_id() +
                                " has no category in the evaluated field");
    }
    verdict.missing = true;
  }
  return verdict;
}

FieldIndicators compute_indicators(const Corpus& field_corpus, const FieldCitationThreshold& threshold,
                                   const std::set<std::string>& field_categories,
                                   const IndicatorOptions& options) {
  struct Tally {
    std::vector<std::int64_t> citations;
    std::int64_t q1 = 0;
    std::int64_t top = 0;
  };
  std::map<std::string, Tally> tallies;
  FieldIndicators out;
  for (const auto& paper : field_corpus.publications()) {
    auto& t = tallies[paper.institution_id];
    t.citations.push_back(paper.citations);
    const auto verdict = is_first_quartile(paper, field_corpus.journal(paper.journal_id), field_categories, options);
    if (verdict.q1) ++t.q1;
    if (verdict.missing) ++out.quartile_misses;
    if (threshold.pool_size > 0 && paper.citations >= threshold.threshold) ++t.top;
  }
  for (auto& [institution, t] : tallies) {
    IndicatorSet s;
    s.institution_id = institution;
    s.ndoc = static_cast<std::int64_t>(t.citations.size());
    for (auto c : t.citations) s.ncit += c;
    s.h = h_index(t.citations);
    const double n = static_cast<double>(s.ndoc);
    s.acit = static_cast<double>(s.ncit) / n;
    s.pct_q1 = static_cast<double>(t.q1) / n;
    s.topcit = threshold.pool_size > 0 ? static_cast<double>(t.top) / n : 0.0;
    out.by_institution.emplace(institution, std::move(s));
  }
  return out;
}

}  // namespace unirank
