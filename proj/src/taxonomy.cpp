#include "unirank/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "unirank/csv.hpp"
#include "unirank/error.hpp"

namespace unirank {

std::string_view to_string(FieldLevel level) {
  return level == FieldLevel::field ? "field" : "subfield";
}

void FieldTaxonomy::add(FieldDefinition definition) {
  if (definition.name.empty()) throw InputError("field with empty name");
  if (definition.categories.empty()) {
    throw InputError("field '" + definition.name + "' has no categories");
  }
  if (fields_.contains(definition.name)) throw InputError("duplicate field name '" + definition.name + "'");
  std::string name = definition.name;
  fields_.emplace(std::move(name), std::move(definition));
}

const FieldDefinition& FieldTaxonomy::field(const std::string& name) const {
  auto it = fields_.find(name);
  if (it == fields_.end()) throw InputError("unknown field '" + name + "'");
  return it->second;
}

FieldTaxonomy read_taxonomy(std::istream& in, const std::string& source) {
  csv::Table table(in, source);
  const auto c_name = table.require_column("field_name");
  const auto c_level = table.require_column("level");
  const auto c_cat = table.require_column("category");

  // Rows are grouped per field; a field declared with two different levels is
  // a duplicate definition.
  std::map<std::string, FieldDefinition> pending;
  std::map<std::string, std::size_t> first_line;
  for (const auto& row : table.rows()) {
    const std::string name = table.cell(row, c_name);
    if (name.empty()) throw InputError(located(source, row.line, "empty field_name"));
    const std::string level_text = table.cell(row, c_level);
    FieldLevel level;
    if (level_text == "field") {
      level = FieldLevel::field;
    } else if (level_text == "subfield") {
      level = FieldLevel::subfield;
    } else {
      throw InputError(located(source, row.line, "level must be 'field' or 'subfield', got '" + level_text + "'"));
    }
    auto [it, inserted] = pending.try_emplace(name, FieldDefinition{name, level, {}});
    if (inserted) {
      first_line[name] = row.line;
    } else if (it->second.level != level) {
      throw InputError(located(source, row.line,
                               "duplicate field name '" + name + "' with a different level (first defined at line " +
                                   std::to_string(first_line[name]) + ")"));
    }
    const std::string category = normalize_category(table.cell(row, c_cat));
    if (category.empty()) continue;
    if (!it->second.categories.insert(category).second) {
      throw InputError(located(source, row.line, "category '" + category + "' listed twice for field '" + name + "'"));
    }
  }

  FieldTaxonomy taxonomy;
  for (auto& [name, def] : pending) {
    if (def.categories.empty()) {
      throw InputError(located(source, first_line[name], "field '" + name + "' has no categories"));
    }
    taxonomy.add(std::move(def));
  }
  return taxonomy;
}

FieldTaxonomy load_taxonomy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return read_taxonomy(in, path.string());
}

const std::set<std::string>& FieldAssignment::fields_of(const std::string& record_id) const {
  static const std::set<std::string> kNone;
  auto it = fields_by_record.find(record_id);
  return it == fields_by_record.end() ? kNone : it->second;
}

FieldAssignment assign_fields(const Corpus& corpus, const FieldTaxonomy& taxonomy) {
  std::map<std::string, std::vector<std::string>> fields_by_category;
  FieldAssignment out;
  for (const auto& [name, def] : taxonomy.fields()) {
    out.field_names.insert(name);
    for (const auto& cat : def.categories) fields_by_category[cat].push_back(name);
  }
  for (const auto& pub : corpus.publications()) {
    std::set<std::string> fields;
    for (const auto& cat : corpus.journal(pub.journal_id).categories()) {
      auto it = fields_by_category.find(cat);
      if (it != fields_by_category.end()) fields.insert(it->second.begin(), it->second.end());
    }
    if (fields.empty()) out.unassigned.push_back(pub.record_id);
    out.fields_by_record.emplace(pub.record_id, std::move(fields));
  }
  std::sort(out.unassigned.begin(), out.unassigned.end());
  return out;
}

Corpus field_corpus(const Corpus& corpus, const FieldAssignment& assignment, const std::string& field) {
  if (!assignment.field_names.contains(field)) throw InputError("unknown field '" + field + "'");
  std::vector<PublicationRecord> records;
  JournalMap journals;
  for (const auto& pub : corpus.publications()) {
    if (!assignment.fields_of(pub.record_id).contains(field)) continue;
    records.push_back(pub);
    if (!journals.contains(pub.journal_id)) journals.emplace(pub.journal_id, corpus.journal(pub.journal_id));
  }
  return Corpus(std::move(records), std::move(journals), corpus.window());
}

}  // namespace unirank
