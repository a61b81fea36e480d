#include "unirank/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "unirank/concordance.hpp"
#include "unirank/csv.hpp"
#include "unirank/error.hpp"
#include "unirank/format.hpp"
#include "unirank/taxonomy.hpp"

namespace unirank {
namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

struct Inputs {
  std::vector<PublicationRecord> publications;
  JournalMap journals;
  FieldTaxonomy taxonomy;
};

Inputs load_inputs(const RunConfig& config) {
  if (!config.publications || !config.journals || !config.taxonomy) {
    throw ConfigError("publications, journals and taxonomy must all be configured");
  }
  Inputs in;
  in.publications = load_publications(*config.publications, config.publications_format);
  in.journals = load_journals(*config.journals);
  in.taxonomy = load_taxonomy(*config.taxonomy);
  return in;
}

FieldResult score_one_field(const RunConfig& config, const Corpus& corpus, const FieldAssignment& assignment,
                            const FieldDefinition& field) {
  const Corpus sub = field_corpus(corpus, assignment, field.name);
  FieldResult r{field.name, corpus.window(), top10_threshold(sub, field.name), {}, {}, {}, {}};
  r.indicators = compute_indicators(sub, r.threshold, field.categories,
                                    IndicatorOptions{config.q1_policy, config.missing_quartile});
  r.scores = score_field(r.indicators.by_institution);
  if (!r.scores.empty()) {
    r.quadrants = classify_quadrants(r.scores);
    r.ranking = build_ranking(r.scores, config.national_system, field.name, corpus.window());
  }
  return r;
}

std::string header_block(const RunConfig& config, const std::optional<TimeWindow>& window, const std::string& extra) {
  std::string out;
  for (const auto& line : metadata_lines(config, window)) out += line + '\n';
  if (!extra.empty()) out += extra + '\n';
  return out;
}

std::string suffix(const TimeWindow& w) { return "_w" + std::to_string(w.length()); }

void check_slugs(const FieldTaxonomy& taxonomy) {
  std::map<std::string, std::string> seen;
  for (const auto& [name, _] : taxonomy.fields()) {
    const auto slug = field_slug(name);
    auto [it, inserted] = seen.emplace(slug, name);
    if (!inserted) {
      throw InputError("fields '" + it->second + "' and '" + name + "' map to the same file name '" + slug + "'");
    }
  }
}

}  // namespace

std::string field_slug(const std::string& field_name) {
  std::string out;
  for (unsigned char c : field_name) {
    if (c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z')) {
      out.push_back(static_cast<char>(c));
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (!out.empty() && out.back() != '_') {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "field" : out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(tmp + ": cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw InputError(tmp + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

std::vector<WindowResult> run_pipeline(const RunConfig& config, const RunOptions& options) {
  if (config.windows.empty()) throw ConfigError("no time window configured");
  const Inputs in = load_inputs(config);
  check_slugs(in.taxonomy);
  if (auto missing = unresolved_journals(in.publications, in.journals); !missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw InputError("publications reference unknown journals: " + list);
  }

  std::vector<const FieldDefinition*> fields;
  for (const auto& [_, def] : in.taxonomy.fields()) fields.push_back(&def);

  std::vector<WindowResult> results;
  for (const auto& window : config.windows) {
    auto built = build_corpus(in.publications, in.journals, window);
    const Corpus& corpus = built.corpus;
    const FieldAssignment assignment = assign_fields(corpus, in.taxonomy);

    std::vector<std::size_t> order(fields.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (options.reverse_field_order) std::reverse(order.begin(), order.end());

    std::vector<std::optional<FieldResult>> slots(fields.size());
    if (options.jobs <= 1) {
      for (auto i : order) slots[i] = score_one_field(config, corpus, assignment, *fields[i]);
    } else {
      // Fixed-size batches of async tasks; every task writes only its own slot.
      for (std::size_t start = 0; start < order.size(); start += options.jobs) {
        std::vector<std::future<void>> batch;
        for (std::size_t k = start; k < std::min(order.size(), start + options.jobs); ++k) {
          const auto i = order[k];
          batch.push_back(std::async(std::launch::async, [&, i] {
            slots[i] = score_one_field(config, corpus, assignment, *fields[i]);
          }));
        }
        for (auto& f : batch) f.get();
      }
    }

    WindowResult wr;
    wr.window = window;
    wr.records = corpus.size();
    wr.dropped = built.dropped_outside_window;
    wr.unassigned = assignment.unassigned;
    wr.warnings = built.warnings;
    for (auto& slot : slots) {
      if (slot->scores.empty()) {
        wr.skipped.push_back(slot->field_name);
        continue;
      }
      if (slot->indicators.quartile_misses > 0) {
        wr.warnings.push_back("field '" + slot->field_name + "': " +
                              std::to_string(slot->indicators.quartile_misses) +
                              " papers with a missing quartile counted as not Q1");
      }
      wr.fields.push_back(std::move(*slot));
    }
    results.push_back(std::move(wr));
  }
  return results;
}

std::string render_indicators(const RunConfig& config, const FieldResult& field) {
  std::ostringstream out;
  out << header_block(config, field.window,
                      "# top10_threshold=" + std::to_string(field.threshold.threshold) +
                          ",pool_size=" + std::to_string(field.threshold.pool_size));
  csv::write_row(out, {"field_name", "institution_id", "ndoc", "ncit", "h", "pct_q1", "acit", "topcit"});
  for (const auto& [id, s] : field.indicators.by_institution) {
    csv::write_row(out, {field.field_name, id, std::to_string(s.ndoc), std::to_string(s.ncit), std::to_string(s.h),
                         format_fixed(s.pct_q1, 6), format_fixed(s.acit, 6), format_fixed(s.topcit, 6)});
  }
  return out.str();
}

std::string render_quadrants(const RunConfig& config, const FieldResult& field) {
  std::ostringstream out;
  out << header_block(config, field.window, "");
  csv::write_row(out, {"field_name", "institution_id", "qnif", "qlif", "ifq2a", "quadrant", "mean_qnif", "mean_qlif"});
  for (const auto& [id, s] : field.scores) {
    csv::write_row(out, {field.field_name, id, format_fixed(s.qnif, 6), format_fixed(s.qlif, 6),
                         format_fixed(s.ifq2a, 6), std::string(to_string(field.quadrants.labels.at(id))),
                         format_fixed(field.quadrants.mean_qnif, 6), format_fixed(field.quadrants.mean_qlif, 6)});
  }
  return out.str();
}

std::string render_ranking(const RunConfig& config, const FieldResult& field) {
  std::ostringstream out;
  out << header_block(config, field.window, "");
  write_ranking(out, field.ranking);
  return out.str();
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate_config(config);
    bool failed = false;
    if (config.publications && config.journals && config.taxonomy) {
      const Inputs in = load_inputs(config);
      out << "publications: " << in.publications.size() << '\n';
      out << "journals: " << in.journals.size() << '\n';
      out << "fields: " << in.taxonomy.size() << '\n';
      const auto missing = unresolved_journals(in.publications, in.journals);
      out << "unresolved journals: " << missing.size() << '\n';
      for (const auto& id : missing) out << "  " << id << '\n';
      if (!missing.empty()) {
        err << "error: " << missing.size() << " journal ids referenced by publications are not in the journal file\n";
        failed = true;
      } else {
        check_slugs(in.taxonomy);
        for (const auto& window : config.windows) {
          const auto built = build_corpus(in.publications, in.journals, window);
          const auto assignment = assign_fields(built.corpus, in.taxonomy);
          out << "window " << window.label() << ": " << built.corpus.size() << " records kept, "
              << built.dropped_outside_window << " outside window\n";
          for (const auto& w : built.warnings) err << "warning: " << w << '\n';
          out << "  unassigned records: " << assignment.unassigned.size() << '\n';
          for (const auto& id : assignment.unassigned) out << "    " << id << '\n';
          std::map<std::string, std::size_t> per_field;
          for (const auto& [_, fields] : assignment.fields_by_record) {
            for (const auto& f : fields) ++per_field[f];
          }
          for (const auto& [name, _] : in.taxonomy.fields()) {
            out << "  field " << name << ": " << per_field[name] << " records\n";
          }
        }
      }
    }
    std::size_t tables = 0;
    TableIndex index;
    for (const auto& p : config.external_rankings) {
      for (auto& t : load_rankings(p)) {
        index.add(std::move(t));
        ++tables;
      }
    }
    for (const auto& p : config.national_rankings) {
      for (auto& t : load_rankings(p)) {
        index.add(std::move(t));
        ++tables;
      }
    }
    if (tables) out << "ranking tables: " << tables << '\n';
    if (config.crosswalk) {
      const auto crosswalk = load_crosswalk(*config.crosswalk);
      std::set<std::string> national_fields;
      if (config.national_rankings.empty() && config.taxonomy) {
        const auto taxonomy = load_taxonomy(*config.taxonomy);
        for (const auto& [name, _] : taxonomy.fields()) national_fields.insert(name);
      }
      std::size_t unresolved = 0;
      for (const auto& p : crosswalk.pairs) {
        auto resolves = [&](const std::string& system, const std::string& field) {
          if (index.find(system, field)) return true;
          return system == config.national_system && national_fields.contains(field);
        };
        if (!resolves(p.source_system, p.source_field) || !resolves(p.target_system, p.target_field)) {
          err << "error: unresolved crosswalk pair " << p.source_system << '/' << p.source_field << " -> "
              << p.target_system << '/' << p.target_field << '\n';
          ++unresolved;
        }
      }
      out << "crosswalk pairs: " << crosswalk.pairs.size() << " (" << unresolved << " unresolved)\n";
      if (unresolved) failed = true;
    }
    return failed ? kExitInput : kExitOk;
  });
}

namespace {

int write_field_outputs(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options,
                        bool full) {
  validate_config(config);
  const auto results = run_pipeline(config, options);
  std::filesystem::create_directories(config.out_dir);
  for (const auto& wr : results) {
    for (const auto& w : wr.warnings) err << "warning: " << w << '\n';
    for (const auto& name : wr.skipped) {
      err << "notice: field '" << name << "' has no records in window " << wr.window.label() << "; skipped\n";
    }
    for (const auto& field : wr.fields) {
      const std::string stem = field_slug(field.field_name) + suffix(wr.window) + ".csv";
      write_file_atomic(config.out_dir / ("quadrant_" + stem), render_quadrants(config, field));
      if (full) {
        write_file_atomic(config.out_dir / ("ranking_" + stem), render_ranking(config, field));
        write_file_atomic(config.out_dir / ("indicators_" + stem), render_indicators(config, field));
      }
    }
    out << "window " << wr.window.label() << ": " << wr.fields.size() << " fields written, " << wr.skipped.size()
        << " skipped\n";
  }
  return kExitOk;
}

}  // namespace

int cmd_rank(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options) {
  return guarded(err, [&] { return write_field_outputs(config, out, err, options, true); });
}

int cmd_quadrant(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options) {
  return guarded(err, [&] { return write_field_outputs(config, out, err, options, false); });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err, const RunOptions& options) {
  return guarded(err, [&] {
    validate_config(config);
    if (!config.crosswalk) throw ConfigError("compare needs a crosswalk");
    TableIndex index;
    for (const auto& p : config.external_rankings) {
      for (auto& t : load_rankings(p)) index.add(std::move(t));
    }
    for (const auto& p : config.national_rankings) {
      for (auto& t : load_rankings(p)) index.add(std::move(t));
    }
    std::optional<TimeWindow> window;
    if (config.national_rankings.empty()) {
      // National tables come from the first configured window.
      RunConfig first = config;
      if (first.windows.empty()) throw ConfigError("no time window configured");
      first.windows.resize(1);
      window = first.windows.front();
      auto results = run_pipeline(first, options);
      for (auto& field : results.front().fields) index.add(std::move(field.ranking));
    }
    const std::set<std::string> system_set = config.system_institutions
                                                 ? load_institution_set(*config.system_institutions)
                                                 : index.institutions_of_system(config.national_system);
    const auto crosswalk = load_crosswalk(*config.crosswalk);
    const auto reports = run_crosswalk(crosswalk, index, system_set,
                                       ConcordanceOptions{config.min_n, config.missing_national});
    std::filesystem::create_directories(config.out_dir);
    std::size_t unresolved = 0;
    for (const auto& report : reports) {
      std::ostringstream body;
      body << header_block(config, window,
                           "# systems=" + report.source_system + " vs " + report.target_system);
      write_report(body, report);
      const auto name = "concordance_" + field_slug(report.source_system) + "_vs_" +
                        field_slug(report.target_system) + ".csv";
      write_file_atomic(config.out_dir / name, body.str());
      for (const auto& pair : report.pairs) {
        for (const auto& w : pair.warnings) err << "warning: " << w << '\n';
      }
      for (const auto& u : report.unresolved) {
        err << "error: unresolved crosswalk pair " << u.source_system << '/' << u.source_field << " -> "
            << u.target_system << '/' << u.target_field << '\n';
        ++unresolved;
      }
      out << name << ": " << report.pairs.size() << " pairs\n";
    }
    return unresolved ? kExitInput : kExitOk;
  });
}

}  // namespace unirank
