#pragma once

#include <cstddef>
#include <cstdint>
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

namespace unirank {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// One citable paper.
struct PublicationRecord {
  std::string record_id;
  std::string institution_id;
  int year = 0;
  std::string journal_id;
  std::int64_t citations = 0;  // snapshot count supplied by the data provider

  bool operator==(const PublicationRecord&) const = default;
};

/// Canonical form of a subject-category code: trimmed, ASCII case-folded.
/// Bytes outside ASCII are compared as-is.
std::string normalize_category(std::string_view code);

/// Subject categories of a journal and its quartile per (category, year).
/// Category codes are stored normalized.
class JournalProfile {
 public:
  explicit JournalProfile(std::string journal_id) : journal_id_(std::move(journal_id)) {}

  const std::string& journal_id() const { return journal_id_; }
  const std::set<std::string>& categories() const { return categories_; }
  const std::map<std::pair<std::string, int>, int>& quartiles() const { return quartiles_; }

  /// Adds a (category, year, quartile) fact. Throws InputError on an out-of-range
  /// quartile or on a conflict with an already recorded value.
  void add(const std::string& category, int year, int quartile);

  std::optional<int> find_quartile(const std::string& category, int year) const;
  /// Like find_quartile, but a missing entry throws QuartileLookupError.
  int quartile(const std::string& category, int year) const;

  bool operator==(const JournalProfile&) const = default;

 private:
  std::string journal_id_;
  std::set<std::string> categories_;
  std::map<std::pair<std::string, int>, int> quartiles_;
};

using JournalMap = std::map<std::string, JournalProfile>;

/// Inclusive year range.
struct TimeWindow {
  int start_year = 0;
  int end_year = 0;

  /// Throws ConfigError when start > end.
  static TimeWindow make(int start_year, int end_year);
  /// Parses "START:END" (or "START-END").
  static TimeWindow parse(const std::string& text);

  int length() const { return end_year - start_year + 1; }
  bool contains(int year) const { return start_year <= year && year <= end_year; }
  bool contains(const TimeWindow& inner) const {
    return start_year <= inner.start_year && inner.end_year <= end_year;
  }
  std::string label() const;  // "2008-2012"

  bool operator==(const TimeWindow&) const = default;
};

/// Validated, windowed publication set. Immutable once built.
class Corpus {
 public:
  /// Checks every invariant: unique record ids, years inside the window,
  /// journals resolvable. Throws InputError otherwise.
  Corpus(std::vector<PublicationRecord> publications, JournalMap journals, TimeWindow window);

  const std::vector<PublicationRecord>& publications() const { return publications_; }
  const JournalMap& journals() const { return journals_; }
  const TimeWindow& window() const { return window_; }
  std::size_t size() const { return publications_.size(); }
  bool empty() const { return publications_.empty(); }

  const JournalProfile& journal(const std::string& journal_id) const;

  bool operator==(const Corpus&) const = default;

 private:
  std::vector<PublicationRecord> publications_;
  JournalMap journals_;
  TimeWindow window_;
};

enum class InputFormat { csv, jsonl };

InputFormat parse_input_format(const std::string& text);

std::vector<PublicationRecord> load_publications(const std::filesystem::path& path, InputFormat format);
std::vector<PublicationRecord> read_publications(std::istream& in, InputFormat format,
                                                 const std::string& source);
void write_publications(std::ostream& out, std::span<const PublicationRecord> records, InputFormat format);

JournalMap load_journals(const std::filesystem::path& path);
JournalMap read_journals(std::istream& in, const std::string& source);

struct CorpusBuild {
  Corpus corpus;
  std::size_t dropped_outside_window = 0;
  std::vector<std::string> warnings;
};

/// Drops records outside `window` and validates the rest. A record whose
/// journal is missing from `journals` is a hard error. An empty result is a warning.
CorpusBuild build_corpus(std::span<const PublicationRecord> publications, const JournalMap& journals,
                         TimeWindow window);

/// Journal ids referenced by `publications` but absent from `journals`, sorted.
std::vector<std::string> unresolved_journals(std::span<const PublicationRecord> publications,
                                             const JournalMap& journals);

}  // namespace unirank
