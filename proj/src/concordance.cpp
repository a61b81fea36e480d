#include "unirank/concordance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "unirank/csv.hpp"
#include "unirank/error.hpp"

namespace unirank {

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman_rho: lists differ in length");
  const std::size_t n = x.size();
  if (n < min_n || n == 0) return std::nullopt;
  const auto rx = midranks(x);
  const auto ry = midranks(y);
  // Midranks always average to (n + 1) / 2.
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelation("spearman_rho: a list has no variation");
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

std::string Rho::str() const {
  switch (status) {
    case Status::value:
      return format_fixed(value, 3);
    case Status::insufficient:
      return "*";
    case Status::undefined:
      return "undefined";
  }
  return "*";
}

std::string_view to_string(MissingNationalPolicy policy) {
  return policy == MissingNationalPolicy::strict ? "strict" : "warn";
}

Agreement agreement_level(const RankingTable& international, const RankingTable& national,
                          MissingNationalPolicy policy) {
  const auto s = static_cast<std::int64_t>(international.entries.size());
  if (s == 0) throw std::invalid_argument("agreement_level: international table is empty");
  std::unordered_map<std::string, const RankEntry*> by_id;
  for (const auto& e : national.entries) by_id.emplace(e.institution_id, &e);

  Agreement out;
  out.fraction = Fraction{0, s};
  for (const auto& e : international.entries) {
    auto it = by_id.find(e.institution_id);
    if (it == by_id.end()) {
      if (policy == MissingNationalPolicy::strict) {
        throw InputError("institution '" + e.institution_id + "' ranked in " + international.system_name + "/" +
                         international.field_name + " is missing from " + national.system_name + "/" +
                         national.field_name);
      }
      out.missing_national.push_back(e.institution_id);
      continue;
    }
    // rank <= s, compared on doubled effective ranks to stay in integers.
    if (it->second->rank.twice_effective_rank() <= 2 * s) ++out.fraction.numerator;
  }
  return out;
}

ConcordancePair compare_pair(const RankingTable& international, const RankingTable& national,
                             const std::set<std::string>& system_set, const ConcordanceOptions& options) {
  const RankingTable restricted = restrict_to_system(international, system_set);
  ConcordancePair pair;
  pair.source_field = international.field_name;
  pair.target_field = national.field_name;

  std::unordered_map<std::string, const RankEntry*> natl;
  for (const auto& e : national.entries) natl.emplace(e.institution_id, &e);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& e : restricted.entries) {
    auto it = natl.find(e.institution_id);
    if (it == natl.end()) continue;
    x.push_back(e.rank.effective_rank());
    y.push_back(it->second->rank.effective_rank());
  }
  pair.n = x.size();
  if (pair.n < options.min_n) {
    pair.rho = Rho::insufficient();
  } else {
    try {
      pair.rho = Rho::of(*spearman_rho(x, y, options.min_n));
    } catch (const UndefinedCorrelation&) {
      pair.rho = Rho::undefined();
      pair.warnings.push_back("rho undefined for " + pair.source_field + " -> " + pair.target_field +
                              ": no variation in ranks");
    }
  }

  if (restricted.entries.empty()) {
    pair.agreement = Fraction{0, 0};
  } else {
    auto agreement = agreement_level(restricted, national, options.missing_national);
    pair.agreement = agreement.fraction;
    for (const auto& id : agreement.missing_national) {
      pair.warnings.push_back("institution '" + id + "' ranked in " + international.system_name + "/" +
                              international.field_name + " is missing from " + national.system_name + "/" +
                              national.field_name + "; counted as not coinciding");
    }
  }
  return pair;
}

namespace {

Fraction add(const Fraction& a, const Fraction& b) {
  const std::int64_t g = std::gcd(a.denominator, b.denominator);
  const std::int64_t den = a.denominator / g * b.denominator;
  const std::int64_t num = a.numerator * (b.denominator / g) + b.numerator * (a.denominator / g);
  return Fraction{num, den}.reduced();
}

}  // namespace

AggregateAgreement aggregate_agreement(std::span<const ConcordancePair> pairs) {
  AggregateAgreement out;
  out.pooled = Fraction{0, 0};
  Fraction sum{0, 1};
  for (const auto& p : pairs) {
    out.pooled.numerator += p.agreement.numerator;
    out.pooled.denominator += p.agreement.denominator;
    if (p.agreement.denominator == 0) continue;
    sum = add(sum, p.agreement.reduced());
    ++out.pairs_used;
  }
  if (out.pooled.denominator == 0) throw InputError("aggregate_agreement: total denominator is zero");
  out.mean_of_fractions =
      Fraction{sum.numerator, sum.denominator * static_cast<std::int64_t>(out.pairs_used)}.reduced();
  return out;
}

FieldCrosswalk read_crosswalk(std::istream& in, const std::string& source) {
  csv::Table table(in, source);
  const auto c_ss = table.require_column("source_system");
  const auto c_sf = table.require_column("source_field");
  const auto c_ts = table.require_column("target_system");
  const auto c_tf = table.require_column("target_field");
  FieldCrosswalk out;
  for (const auto& row : table.rows()) {
    CrosswalkPair p{table.cell(row, c_ss), table.cell(row, c_sf), table.cell(row, c_ts), table.cell(row, c_tf)};
    if (p.source_system.empty() || p.source_field.empty() || p.target_system.empty()) {
      throw InputError(located(source, row.line, "empty source_system, source_field or target_system"));
    }
    // An empty target marks a source field with no counterpart; nothing to compare.
    if (p.target_field.empty()) continue;
    if (std::find(out.pairs.begin(), out.pairs.end(), p) != out.pairs.end()) {
      throw InputError(located(source, row.line, "duplicate crosswalk pair " + p.source_field + " -> " + p.target_field));
    }
    out.pairs.push_back(std::move(p));
  }
  return out;
}

FieldCrosswalk load_crosswalk(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  return read_crosswalk(in, path.string());
}

void TableIndex::add(RankingTable table) {
  auto key = std::make_pair(table.system_name, table.field_name);
  if (tables_.contains(key)) {
    throw InputError("ranking table " + key.first + "/" + key.second + " loaded twice");
  }
  tables_.emplace(std::move(key), std::move(table));
}

const RankingTable* TableIndex::find(const std::string& system, const std::string& field) const {
  auto it = tables_.find({system, field});
  return it == tables_.end() ? nullptr : &it->second;
}

std::set<std::string> TableIndex::institutions_of_system(const std::string& system) const {
  std::set<std::string> out;
  for (const auto& [key, table] : tables_) {
    if (key.first != system) continue;
    for (const auto& e : table.entries) out.insert(e.institution_id);
  }
  return out;
}

std::vector<ConcordanceReport> run_crosswalk(const FieldCrosswalk& crosswalk, const TableIndex& tables,
                                             const std::set<std::string>& system_set,
                                             const ConcordanceOptions& options) {
  std::vector<ConcordanceReport> reports;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::size_t resolved = 0;
  for (const auto& p : crosswalk.pairs) {
    auto [it, inserted] = index.emplace(std::make_pair(p.source_system, p.target_system), reports.size());
    if (inserted) reports.push_back(ConcordanceReport{p.source_system, p.target_system, {}, {}, std::nullopt});
    auto& report = reports[it->second];
    const RankingTable* intl = tables.find(p.source_system, p.source_field);
    const RankingTable* natl = tables.find(p.target_system, p.target_field);
    if (!intl || !natl) {
      report.unresolved.push_back(p);
      continue;
    }
    report.pairs.push_back(compare_pair(*intl, *natl, system_set, options));
    ++resolved;
  }
  if (resolved == 0) throw InputError("crosswalk has no resolvable field pair");
  for (auto& report : reports) {
    std::int64_t total = 0;
    for (const auto& pair : report.pairs) total += pair.agreement.denominator;
    if (total > 0) report.aggregate = aggregate_agreement(report.pairs);
  }
  return reports;
}

namespace {

std::string decimal(const Fraction& f) {
  return f.denominator == 0 ? std::string("NA") : format_fixed(f.value(), 6);
}

}  // namespace

void write_report(std::ostream& out, const ConcordanceReport& report) {
  csv::write_row(out, {"source_field", "target_field", "n", "rho", "agreement_num", "agreement_den",
                       "agreement_decimal"});
  for (const auto& p : report.pairs) {
    csv::write_row(out, {p.source_field, p.target_field, std::to_string(p.n), p.rho.str(),
                         std::to_string(p.agreement.numerator), std::to_string(p.agreement.denominator),
                         decimal(p.agreement)});
  }
  out << '\n';
  csv::write_row(out, {"aggregate", "agreement_num", "agreement_den", "agreement_decimal"});
  if (report.aggregate) {
    const auto& a = *report.aggregate;
    csv::write_row(out, {"pooled", std::to_string(a.pooled.numerator), std::to_string(a.pooled.denominator),
                         decimal(a.pooled)});
    csv::write_row(out, {"mean_of_fractions", std::to_string(a.mean_of_fractions.numerator),
                         std::to_string(a.mean_of_fractions.denominator), decimal(a.mean_of_fractions)});
  } else {
    csv::write_row(out, {"pooled", "0", "0", "NA"});
    csv::write_row(out, {"mean_of_fractions", "0", "0", "NA"});
  }
  for (const auto& u : report.unresolved) {
    out << "# unresolved: " << u.source_system << '/' << u.source_field << " -> " << u.target_system << '/'
        << u.target_field << '\n';
  }
}

}  // namespace unirank
