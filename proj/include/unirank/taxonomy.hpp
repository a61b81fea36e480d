#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unirank/corpus.hpp"

namespace unirank {

enum class FieldLevel { field, subfield };

std::string_view to_string(FieldLevel level);

struct FieldDefinition {
  std::string name;
  FieldLevel level = FieldLevel::field;
  std::set<std::string> categories;  // normalized codes, never empty

  bool operator==(const FieldDefinition&) const = default;
};

/// Named fields, each a union of subject categories. Categories may be shared
/// between fields.
class FieldTaxonomy {
 public:
  /// Throws InputError on an empty category set or a repeated field name.
  void add(FieldDefinition definition);

  const std::map<std::string, FieldDefinition>& fields() const { return fields_; }
  const FieldDefinition& field(const std::string& name) const;
  bool contains(const std::string& name) const { return fields_.contains(name); }
  std::size_t size() const { return fields_.size(); }

 private:
  std::map<std::string, FieldDefinition> fields_;
};

FieldTaxonomy load_taxonomy(const std::filesystem::path& path);
FieldTaxonomy read_taxonomy(std::istream& in, const std::string& source);

/// record_id -> fields the record belongs to (whole counting).
struct FieldAssignment {
  std::map<std::string, std::set<std::string>> fields_by_record;
  std::set<std::string> field_names;
  std::vector<std::string> unassigned;  // sorted record ids matching no field

  const std::set<std::string>& fields_of(const std::string& record_id) const;
};

/// A record belongs to field F iff its journal's categories intersect F's.
FieldAssignment assign_fields(const Corpus& corpus, const FieldTaxonomy& taxonomy);

/// Sub-corpus of the records assigned to `field`, journals restricted to those
/// referenced. Throws InputError for a field the assignment does not know.
Corpus field_corpus(const Corpus& corpus, const FieldAssignment& assignment, const std::string& field);

}  // namespace unirank
