#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unirank/concordance.hpp"
#include "unirank/corpus.hpp"
#include "unirank/indicators.hpp"

namespace unirank {

inline constexpr const char* kToolName = "unirank";
inline constexpr const char* kToolVersion = "1.0.0";

/// Everything a run depends on. Relative paths in a config file are resolved
/// against the file's directory.
struct RunConfig {
  std::optional<std::filesystem::path> publications;
  InputFormat publications_format = InputFormat::csv;
  std::optional<std::filesystem::path> journals;
  std::optional<std::filesystem::path> taxonomy;
  std::vector<std::filesystem::path> external_rankings;
  std::vector<std::filesystem::path> national_rankings;  // supplied instead of computed
  std::optional<std::filesystem::path> crosswalk;
  std::optional<std::filesystem::path> system_institutions;
  std::string national_system = "national";
  std::vector<TimeWindow> windows;
  Q1Policy q1_policy = Q1Policy::any_relevant;
  MissingQuartilePolicy missing_quartile = MissingQuartilePolicy::warn;
  MissingNationalPolicy missing_national = MissingNationalPolicy::warn;
  std::size_t min_n = kDefaultMinN;
  std::filesystem::path out_dir = "out";
};

/// Parses a JSON config. Unknown keys and ill-typed values throw ConfigError.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// Checks enum/window constraints and that every referenced path exists.
void validate_config(const RunConfig& config);

/// Stable 64-bit FNV-1a hash (hex) of the canonical JSON form of the config.
std::string config_fingerprint(const RunConfig& config);

/// Lines ("# key=value") echoed at the top of every output file.
std::vector<std::string> metadata_lines(const RunConfig& config, const std::optional<TimeWindow>& window);

/// Reads one institution id per line; blank lines and '#' comments ignored.
std::set<std::string> load_institution_set(const std::filesystem::path& path);

}  // namespace unirank
