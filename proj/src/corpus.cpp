#include "unirank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "unirank/csv.hpp"
#include "unirank/error.hpp"

namespace unirank {

std::string normalize_category(std::string_view code) {
  std::string out = csv::trim(code);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

void JournalProfile::add(const std::string& category, int year, int quartile) {
  if (quartile < 1 || quartile > 4) {
    throw InputError("journal " + journal_id_ + ": quartile " + std::to_string(quartile) +
                     " outside {1,2,3,4}");
  }
  const std::string key = normalize_category(category);
  if (key.empty()) throw InputError("journal " + journal_id_ + ": empty category code");
  auto [it, inserted] = quartiles_.emplace(std::make_pair(key, year), quartile);
  if (!inserted && it->second != quartile) {
    throw InputError("journal " + journal_id_ + ": conflicting quartiles Q" + std::to_string(it->second) +
                     " and Q" + std::to_string(quartile) + " for category '" + key + "' in " +
                     std::to_string(year));
  }
  categories_.insert(key);
}

std::optional<int> JournalProfile::find_quartile(const std::string& category, int year) const {
  auto it = quartiles_.find({category, year});
  if (it == quartiles_.end()) return std::nullopt;
  return it->second;
}

int JournalProfile::quartile(const std::string& category, int year) const {
  if (auto q = find_quartile(category, year)) return *q;
  throw QuartileLookupError("journal " + journal_id_ + " has no quartile for category '" + category +
                            "' in " + std::to_string(year));
}

TimeWindow TimeWindow::make(int start_year, int end_year) {
  if (start_year > end_year) {
    throw ConfigError("invalid window " + std::to_string(start_year) + ":" + std::to_string(end_year) +
                      " (start after end)");
  }
  return TimeWindow{start_year, end_year};
}

TimeWindow TimeWindow::parse(const std::string& text) {
  const std::string t = csv::trim(text);
  const auto sep = t.find_first_of(":-", 1);
  if (sep == std::string::npos) throw ConfigError("window must be START:END, got '" + t + "'");
  try {
    const auto start = csv::parse_int(t.substr(0, sep), "window", 0, "start year");
    const auto end = csv::parse_int(t.substr(sep + 1), "window", 0, "end year");
    return make(static_cast<int>(start), static_cast<int>(end));
  } catch (const InputError&) {
    throw ConfigError("window must be START:END, got '" + t + "'");
  }
}

std::string TimeWindow::label() const {
  return std::to_string(start_year) + "-" + std::to_string(end_year);
}

Corpus::Corpus(std::vector<PublicationRecord> publications, JournalMap journals, TimeWindow window)
    : publications_(std::move(publications)), journals_(std::move(journals)), window_(window) {
  if (window_.start_year > window_.end_year) throw InputError("corpus window is empty");
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < publications_.size(); ++i) {
    const auto& p = publications_[i];
    if (!seen.emplace(p.record_id, i).second) {
      throw InputError("duplicate record_id '" + p.record_id + "' in corpus");
    }
    if (!window_.contains(p.year)) {
      throw InputError("record " + p.record_id + ": year " + std::to_string(p.year) + " outside window " +
                       window_.label());
    }
    if (p.citations < 0) throw InputError("record " + p.record_id + ": negative citations");
    if (!journals_.contains(p.journal_id)) {
      throw InputError("record " + p.record_id + ": unknown journal_id '" + p.journal_id + "'");
    }
  }
}

const JournalProfile& Corpus::journal(const std::string& journal_id) const {
  auto it = journals_.find(journal_id);
  if (it == journals_.end()) throw InputError("unknown journal_id '" + journal_id + "'");
  return it->second;
}

InputFormat parse_input_format(const std::string& text) {
  if (text == "csv") return InputFormat::csv;
  if (text == "jsonl") return InputFormat::jsonl;
  throw ConfigError("unknown publications format '" + text + "' (expected csv or jsonl)");
}

namespace {

void check_record(const PublicationRecord& r, const std::string& source, std::size_t line) {
  if (r.record_id.empty()) throw InputError(located(source, line, "empty record_id"));
  if (r.institution_id.empty()) throw InputError(located(source, line, "empty institution_id"));
  if (r.journal_id.empty()) throw InputError(located(source, line, "empty journal_id"));
  if (r.citations < 0) {
    throw InputError(located(source, line, "negative citations (" + std::to_string(r.citations) +
                                               ") for record " + r.record_id));
  }
  if (r.year < kMinYear || r.year > kMaxYear) {
    throw InputError(located(source, line, "year " + std::to_string(r.year) + " outside [" +
                                               std::to_string(kMinYear) + ", " + std::to_string(kMaxYear) +
                                               "]"));
  }
}

std::vector<PublicationRecord> read_csv(std::istream& in, const std::string& source,
                                        std::vector<std::size_t>& lines) {
  csv::Table table(in, source);
  const auto c_id = table.require_column("record_id");
  const auto c_inst = table.require_column("institution_id");
  const auto c_year = table.require_column("year");
  const auto c_journal = table.require_column("journal_id");
  const auto c_cit = table.require_column("citations");
  std::vector<PublicationRecord> out;
  out.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    PublicationRecord r;
    r.record_id = table.cell(row, c_id);
    r.institution_id = table.cell(row, c_inst);
    const auto year = csv::parse_int(table.cell(row, c_year), source, row.line, "year");
    if (year < kMinYear || year > kMaxYear) {
      throw InputError(located(source, row.line, "year " + std::to_string(year) + " outside [1900, 2100]"));
    }
    r.year = static_cast<int>(year);
    r.journal_id = table.cell(row, c_journal);
    r.citations = csv::parse_int(table.cell(row, c_cit), source, row.line, "citations");
    check_record(r, source, row.line);
    out.push_back(std::move(r));
    lines.push_back(row.line);
  }
  return out;
}

std::string json_string(const nlohmann::json& obj, const char* key, const std::string& source,
                        std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(located(source, line, std::string("missing required key '") + key + "'"));
  if (!it->is_string()) throw InputError(located(source, line, std::string("key '") + key + "' must be a string"));
  return csv::trim(it->get<std::string>());
}

std::int64_t json_int(const nlohmann::json& obj, const char* key, const std::string& source, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(located(source, line, std::string("missing required key '") + key + "'"));
  if (!it->is_number_integer()) {
    throw InputError(located(source, line, std::string("key '") + key + "' must be an integer"));
  }
  return it->get<std::int64_t>();
}

std::vector<PublicationRecord> read_jsonl(std::istream& in, const std::string& source,
                                          std::vector<std::size_t>& lines) {
  std::vector<PublicationRecord> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (csv::trim(text).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(located(source, line, std::string("JSON parse error: ") + e.what()));
    }
    if (!obj.is_object()) throw InputError(located(source, line, "expected a JSON object"));
    PublicationRecord r;
    r.record_id = json_string(obj, "record_id", source, line);
    r.institution_id = json_string(obj, "institution_id", source, line);
    const auto year = json_int(obj, "year", source, line);
    if (year < kMinYear || year > kMaxYear) {
      throw InputError(located(source, line, "year " + std::to_string(year) + " outside [1900, 2100]"));
    }
    r.year = static_cast<int>(year);
    r.journal_id = json_string(obj, "journal_id", source, line);
    r.citations = json_int(obj, "citations", source, line);
    check_record(r, source, line);
    out.push_back(std::move(r));
    lines.push_back(line);
  }
  return out;
}

}  // namespace

std::vector<PublicationRecord> read_publications(std::istream& in, InputFormat format,
                                                 const std::string& source) {
  std::vector<std::size_t> lines;
  auto records = format == InputFormat::csv ? read_csv(in, source, lines) : read_jsonl(in, source, lines);
  std::unordered_map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto [it, inserted] = first_seen.emplace(records[i].record_id, i);
    if (!inserted) {
      throw InputError(located(source, lines[i],
                               "duplicate record_id '" + records[i].record_id + "' (first seen at line " +
                                   std::to_string(lines[it->second]) + ")"));
    }
  }
  return records;
}

std::vector<PublicationRecord> load_publications(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return read_publications(in, format, path.string());
}

void write_publications(std::ostream& out, std::span<const PublicationRecord> records, InputFormat format) {
  if (format == InputFormat::csv) {
    csv::write_row(out, {"record_id", "institution_id", "year", "journal_id", "citations"});
    for (const auto& r : records) {
      csv::write_row(out, {r.record_id, r.institution_id, std::to_string(r.year), r.journal_id,
                           std::to_string(r.citations)});
    }
    return;
  }
  for (const auto& r : records) {
    nlohmann::ordered_json obj;
    obj["record_id"] = r.record_id;
    obj["institution_id"] = r.institution_id;
    obj["year"] = r.year;
    obj["journal_id"] = r.journal_id;
    obj["citations"] = r.citations;
    out << obj.dump() << '\n';
  }
}

JournalMap read_journals(std::istream& in, const std::string& source) {
  csv::Table table(in, source);
  const auto c_id = table.require_column("journal_id");
  const auto c_cat = table.require_column("category");
  const auto c_year = table.require_column("year");
  const auto c_q = table.require_column("quartile");
  JournalMap journals;
  for (const auto& row : table.rows()) {
    const std::string id = table.cell(row, c_id);
    if (id.empty()) throw InputError(located(source, row.line, "empty journal_id"));
    const std::string category = table.cell(row, c_cat);
    const auto year = csv::parse_int(table.cell(row, c_year), source, row.line, "year");
    if (year < kMinYear || year > kMaxYear) {
      throw InputError(located(source, row.line, "year " + std::to_string(year) + " outside [1900, 2100]"));
    }
    const auto q = csv::parse_int(table.cell(row, c_q), source, row.line, "quartile");
    if (q < 1 || q > 4) {
      throw InputError(located(source, row.line, "quartile " + std::to_string(q) + " outside {1,2,3,4}"));
    }
    auto it = journals.try_emplace(id, id).first;
    try {
      it->second.add(category, static_cast<int>(year), static_cast<int>(q));
    } catch (const InputError& e) {
      throw InputError(located(source, row.line, e.what()));
    }
  }
  return journals;
}

JournalMap load_journals(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return read_journals(in, path.string());
}

std::vector<std::string> unresolved_journals(std::span<const PublicationRecord> publications,
                                             const JournalMap& journals) {
  std::set<std::string> missing;
  for (const auto& p : publications) {
    if (!journals.contains(p.journal_id)) missing.insert(p.journal_id);
  }
  return {missing.begin(), missing.end()};
}

CorpusBuild build_corpus(std::span<const PublicationRecord> publications, const JournalMap& journals,
                         TimeWindow window) {
  if (window.start_year > window.end_year) throw ConfigError("invalid window " + window.label());
  std::vector<PublicationRecord> kept;
  std::size_t dropped = 0;
  for (const auto& p : publications) {
    if (!journals.contains(p.journal_id)) {
      throw InputError("record " + p.record_id + ": unknown journal_id '" + p.journal_id + "'");
    }
    if (window.contains(p.year)) {
      kept.push_back(p);
    } else {
      ++dropped;
    }
  }
  std::vector<std::string> warnings;
  if (kept.empty()) warnings.push_back("corpus is empty after applying window " + window.label());
  return CorpusBuild{Corpus(std::move(kept), journals, window), dropped, std::move(warnings)};
}

}  // namespace unirank
