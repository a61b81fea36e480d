#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "unirank/config.hpp"
#include "unirank/ifq2a.hpp"
#include "unirank/indicators.hpp"
#include "unirank/ranking.hpp"

namespace unirank {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitConfig = 2 };

struct RunOptions {
  std::size_t jobs = 1;             // fields processed concurrently when > 1
  bool reverse_field_order = false;  // processing order only; outputs must not change
};

/// Everything computed for one field within one window.
struct FieldResult {
  std::string field_name;
  TimeWindow window;
  FieldCitationThreshold threshold;
  FieldIndicators indicators;
  std::map<std::string, IndexScore> scores;
  QuadrantMap quadrants;
  RankingTable ranking;
};

/// Loads, windows, assigns and scores every taxonomy field. Fields with no
/// scored institution are left out and named in `skipped`.
struct WindowResult {
  TimeWindow window;
  std::size_t records = 0;
  std::size_t dropped = 0;
  std::vector<std::string> unassigned;
  std::vector<FieldResult> fields;  // taxonomy order
  std::vector<std::string> skipped;
  std::vector<std::string> warnings;
};

std::vector<WindowResult> run_pipeline(const RunConfig& config, const RunOptions& options = {});

/// Output file stem for a field name: ASCII letters and digits lowercased,
/// other ASCII characters collapsed into '_'.
std::string field_slug(const std::string& field_name);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string render_indicators(const RunConfig& config, const FieldResult& field);
std::string render_quadrants(const RunConfig& config, const FieldResult& field);
std::string render_ranking(const RunConfig& config, const FieldResult& field);

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_rank(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options = {});
int cmd_quadrant(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options = {});
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options = {});

}  // namespace unirank
