#include "unirank/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "unirank/csv.hpp"
#include "unirank/error.hpp"

namespace unirank {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "publications",      "publications_format", "journals",         "taxonomy", "external_rankings",
    "national_rankings", "crosswalk",           "system_institutions", "national_system", "windows",
    "q1_policy",         "missing_quartile",    "missing_national", "min_n",    "out"};

std::string get_string(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& text) {
  std::filesystem::path p(text);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

std::vector<std::filesystem::path> get_paths(const json& doc, const char* key, const std::filesystem::path& base) {
  std::vector<std::filesystem::path> out;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    out.push_back(resolve(base, v.get<std::string>()));
    return out;
  }
  if (!v.is_array()) throw ConfigError(std::string("config key '") + key + "' must be a string or array");
  for (const auto& item : v) {
    if (!item.is_string()) throw ConfigError(std::string("config key '") + key + "' must list strings");
    out.push_back(resolve(base, item.get<std::string>()));
  }
  return out;
}

MissingQuartilePolicy parse_missing_quartile(const std::string& text) {
  if (text == "strict") return MissingQuartilePolicy::strict;
  if (text == "warn") return MissingQuartilePolicy::warn;
  throw ConfigError("missing_quartile must be strict or warn, got '" + text + "'");
}

MissingNationalPolicy parse_missing_national(const std::string& text) {
  if (text == "strict") return MissingNationalPolicy::strict;
  if (text == "warn") return MissingNationalPolicy::warn;
  throw ConfigError("missing_national must be strict or warn, got '" + text + "'");
}

json canonical(const RunConfig& c) {
  json doc;
  auto opt = [](const std::optional<std::filesystem::path>& p) { return p ? json(p->string()) : json(nullptr); };
  doc["publications"] = opt(c.publications);
  doc["publications_format"] = c.publications_format == InputFormat::csv ? "csv" : "jsonl";
  doc["journals"] = opt(c.journals);
  doc["taxonomy"] = opt(c.taxonomy);
  doc["external_rankings"] = json::array();
  for (const auto& p : c.external_rankings) doc["external_rankings"].push_back(p.string());
  doc["national_rankings"] = json::array();
  for (const auto& p : c.national_rankings) doc["national_rankings"].push_back(p.string());
  doc["crosswalk"] = opt(c.crosswalk);
  doc["system_institutions"] = opt(c.system_institutions);
  doc["national_system"] = c.national_system;
  doc["windows"] = json::array();
  for (const auto& w : c.windows) doc["windows"].push_back(w.label());
  doc["q1_policy"] = std::string(to_string(c.q1_policy));
  doc["missing_quartile"] = std::string(to_string(c.missing_quartile));
  doc["missing_national"] = std::string(to_string(c.missing_national));
  doc["min_n"] = c.min_n;
  // The output directory is deliberately left out: where files land does not
  // change what they contain.
  return doc;
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig c;
  try {
    if (doc.contains("publications")) c.publications = resolve(base_dir, get_string(doc, "publications"));
    if (doc.contains("publications_format")) {
      c.publications_format = parse_input_format(get_string(doc, "publications_format"));
    }
    if (doc.contains("journals")) c.journals = resolve(base_dir, get_string(doc, "journals"));
    if (doc.contains("taxonomy")) c.taxonomy = resolve(base_dir, get_string(doc, "taxonomy"));
    if (doc.contains("external_rankings")) c.external_rankings = get_paths(doc, "external_rankings", base_dir);
    if (doc.contains("national_rankings")) c.national_rankings = get_paths(doc, "national_rankings", base_dir);
    if (doc.contains("crosswalk")) c.crosswalk = resolve(base_dir, get_string(doc, "crosswalk"));
    if (doc.contains("system_institutions")) {
      c.system_institutions = resolve(base_dir, get_string(doc, "system_institutions"));
    }
    if (doc.contains("national_system")) c.national_system = get_string(doc, "national_system");
    if (doc.contains("windows")) {
      const auto& w = doc.at("windows");
      if (!w.is_array()) throw ConfigError("config key 'windows' must be an array of \"START:END\" strings");
      for (const auto& item : w) {
        if (!item.is_string()) throw ConfigError("config key 'windows' must be an array of \"START:END\" strings");
        c.windows.push_back(TimeWindow::parse(item.get<std::string>()));
      }
    }
    if (doc.contains("q1_policy")) c.q1_policy = parse_q1_policy(get_string(doc, "q1_policy"));
    if (doc.contains("missing_quartile")) c.missing_quartile = parse_missing_quartile(get_string(doc, "missing_quartile"));
    if (doc.contains("missing_national")) c.missing_national = parse_missing_national(get_string(doc, "missing_national"));
    if (doc.contains("min_n")) {
      const auto& v = doc.at("min_n");
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1) {
        throw ConfigError("config key 'min_n' must be a positive integer");
      }
      c.min_n = v.get<std::size_t>();
    }
    if (doc.contains("out")) c.out_dir = resolve(base_dir, get_string(doc, "out"));
    else c.out_dir = resolve(base_dir, "out");
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

void validate_config(const RunConfig& c) {
  auto check = [](const std::optional<std::filesystem::path>& p, const char* key) {
    if (p && !std::filesystem::exists(*p)) {
      throw ConfigError(std::string("config key '") + key + "': no such file " + p->string());
    }
  };
  check(c.publications, "publications");
  check(c.journals, "journals");
  check(c.taxonomy, "taxonomy");
  check(c.crosswalk, "crosswalk");
  check(c.system_institutions, "system_institutions");
  for (const auto& p : c.external_rankings) check(p, "external_rankings");
  for (const auto& p : c.national_rankings) check(p, "national_rankings");
  std::set<int> lengths;
  for (const auto& w : c.windows) {
    if (w.start_year > w.end_year) throw ConfigError("invalid window " + w.label());
    if (!lengths.insert(w.length()).second) {
      throw ConfigError("two windows share length " + std::to_string(w.length()) +
                        "; output suffixes w<length> would collide");
    }
  }
  if (c.min_n < 1) throw ConfigError("min_n must be >= 1");
  if (c.national_system.empty()) throw ConfigError("national_system must not be empty");
}

std::string config_fingerprint(const RunConfig& config) {
  const std::string text = canonical(config).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::vector<std::string> metadata_lines(const RunConfig& config, const std::optional<TimeWindow>& window) {
  std::vector<std::string> lines;
  lines.push_back(std::string("# tool=") + kToolName + " " + kToolVersion);
  lines.push_back("# config_hash=" + config_fingerprint(config));
  if (window) lines.push_back("# window=" + window->label());
  lines.push_back("# q1_policy=" + std::string(to_string(config.q1_policy)));
  lines.push_back("# missing_quartile=" + std::string(to_string(config.missing_quartile)));
  lines.push_back("# top10_rule=k=ceil(0.10*N),citations>=threshold");
  lines.push_back("# rank_ties=competition");
  lines.push_back("# quadrant_boundary=at-mean-is-outstanding");
  lines.push_back("# interval_rank=midpoint");
  lines.push_back("# rho=midrank-pearson,min_n=" + std::to_string(config.min_n));
  lines.push_back("# missing_national=" + std::string(to_string(config.missing_national)));
  return lines;
}

std::set<std::string> load_institution_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string id = csv::trim(line);
    if (id.empty() || id.front() == '#') continue;
    out.insert(id);
  }
  return out;
}

}  // namespace unirank
