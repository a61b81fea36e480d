// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"
#include "unirank/concordance.hpp"
#include "unirank/config.hpp"
#include "unirank/ifq2a.hpp"
#include "unirank/indicators.hpp"
#include "unirank/pipeline.hpp"
#include "unirank/ranking.hpp"

using namespace unirank;
namespace fs = std::filesystem;

namespace {

// Tolerances and time budgets.
constexpr double kFormulaRelTol = 1e-12;
constexpr double kRhoTol = 1e-12;
constexpr double kReplicationTol = 1e-12;
constexpr double kBudgetFormulaSec = 1.0;
constexpr double kBudgetHIndexSec = 5.0;
constexpr double kBudgetThresholdSec = 5.0;
constexpr double kBudgetEndToEndSec = 10.0;

const fs::path kFixtures = UNIRANK_FIXTURES;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool rel_close(double actual, double expected, double tol) {
  if (expected == 0.0) return actual == 0.0;
  return std::fabs(actual - expected) <= tol * std::fabs(expected);
}

IndicatorSet random_indicators(std::mt19937& rng, const std::string& id) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  IndicatorSet s;
  s.institution_id = id;
  s.ndoc = 1 + static_cast<std::int64_t>(rng() % 5000);
  s.ncit = static_cast<std::int64_t>(rng() % 200000);
  s.h = static_cast<std::int64_t>(rng() % static_cast<unsigned>(std::min<std::int64_t>(s.ndoc, 300) + 1));
  s.pct_q1 = unit(rng);
  s.acit = static_cast<double>(s.ncit) / static_cast<double>(s.ndoc);
  s.topcit = unit(rng);
  return s;
}

std::vector<std::string> argsort_desc(const std::map<std::string, IndexScore>& scores) {
  std::vector<std::string> ids;
  for (const auto& [id, _] : scores) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](const auto& a, const auto& b) { return scores.at(a).ifq2a > scores.at(b).ifq2a; });
  return ids;
}

std::map<std::string, std::int64_t> rank_values(const RankingTable& t) {
  std::map<std::string, std::int64_t> out;
  for (const auto& e : t.entries) out[e.institution_id] = e.rank.lo();
  return out;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) out[fs::relative(entry.path(), dir).string()] = testing_support::slurp(entry.path());
  }
  return out;
}

// 1. Formula fidelity.
Outcome formula_fidelity() {
  Outcome o;
  std::mt19937 rng(1001);
  std::size_t zero_h = 0;
  for (int i = 0; i < 1000; ++i) {
    auto ind = random_indicators(rng, "i");
    if (i % 50 == 0) ind.h = 0;
    zero_h += ind.h == 0 ? 1 : 0;
    const auto s = score(ind);
    const double qn3 = static_cast<double>(ind.ndoc) * static_cast<double>(ind.ncit) * static_cast<double>(ind.h);
    const double ql3 = ind.pct_q1 * ind.acit * ind.topcit;
    o.check(rel_close(s.qnif * s.qnif * s.qnif, qn3, kFormulaRelTol), "qnif^3 mismatch at trial " + std::to_string(i));
    o.check(rel_close(s.qlif * s.qlif * s.qlif, ql3, kFormulaRelTol), "qlif^3 mismatch at trial " + std::to_string(i));
    o.check(rel_close(s.ifq2a, s.qnif * s.qlif, kFormulaRelTol), "ifq2a mismatch at trial " + std::to_string(i));
  }
  o.detail = o.ok ? "1000 sets, " + std::to_string(zero_h) + " with h=0" : o.detail;
  return o;
}

// 2. h-index against brute force.
Outcome hindex_oracle() {
  Outcome o;
  std::mt19937 rng(2002);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = rng() % 201;
    const unsigned max = 1 + rng() % (trial % 2 ? 20 : 400);
    std::vector<std::int64_t> c(n);
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % (max + 1));
    o.check(h_index(c) == oracle::h_index(c), "mismatch at trial " + std::to_string(trial));
  }
  if (o.ok) o.detail = "10000 multisets, n<=200";
  return o;
}

// 3. Top-10% threshold against sort-and-index.
Outcome threshold_oracle() {
  Outcome o;
  std::mt19937 rng(3003);
  std::size_t boundary_ties = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = rng() % 301;
    // Narrow ranges force ties at the cut.
    const unsigned range = trial % 3 == 0 ? 3 : (trial % 3 == 1 ? 15 : 1000);
    std::vector<std::int64_t> pool(n);
    for (auto& v : pool) v = static_cast<std::int64_t>(rng() % (range + 1));
    const auto t = citation_threshold(pool);
    o.check(t.pool_size == n, "pool size at trial " + std::to_string(trial));
    o.check(t.threshold == oracle::top10_threshold(pool), "threshold at trial " + std::to_string(trial));
    if (n > 0) {
      const auto top = static_cast<std::size_t>(std::count_if(pool.begin(), pool.end(),
                                                              [&](auto c) { return c >= t.threshold; }));
      o.check(top >= oracle::top_count(n), "top set below ceil(0.1N) at trial " + std::to_string(trial));
      if (top > oracle::top_count(n)) ++boundary_ties;
    }
  }
  o.check(boundary_ties > 1000, "too few boundary-tie pools generated");
  if (o.ok) o.detail = "10000 pools, " + std::to_string(boundary_ties) + " with ties at the cut";
  return o;
}

// 4. Spearman correctness.
Outcome spearman_checks() {
  Outcome o;
  std::mt19937 rng(4004);
  double worst = 0.0;
  for (std::size_t n = 3; n <= 50; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(n);
      std::vector<double> y(n);
      std::iota(x.begin(), x.end(), 1.0);
      std::iota(y.begin(), y.end(), 1.0);
      std::shuffle(x.begin(), x.end(), rng);
      std::shuffle(y.begin(), y.end(), rng);
      const double r = *spearman_rho(x, y);
      const double diff = std::fabs(r - oracle::spearman_closed_form(x, y));
      worst = std::max(worst, diff);
      o.check(diff <= kRhoTol, "closed form mismatch at n=" + std::to_string(n));

      const double id = *spearman_rho(x, x);
      std::vector<double> sorted = x;
      std::sort(sorted.begin(), sorted.end());
      std::vector<double> reversed(sorted.rbegin(), sorted.rend());
      o.check(std::fabs(id - 1.0) <= kRhoTol, "rho(x,x) != 1");
      o.check(std::fabs(*spearman_rho(sorted, reversed) + 1.0) <= kRhoTol, "rho(x,reverse x) != -1");
    }
  }
  const double example = *spearman_rho(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 1, 4, 3});
  o.check(std::fabs(example - 0.6) <= kRhoTol, "[1,2,3,4] vs [2,1,4,3] gave " + std::to_string(example));
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "n=3..50 x100, max |diff|=%.1e, example=%.15f", worst, example);
    o.detail = buf;
  }
  return o;
}

RankingTable table_from(const std::string& system, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string text = "system_name,field_name,institution_id,rank\n";
  for (const auto& [id, rank] : rows) text += system + ",F," + id + "," + rank + "\n";
  std::istringstream in(text);
  return read_rankings(in, "acceptance").at(0);
}

// 5. Agreement: the 2/6 example and perfect agreement.
Outcome agreement_fixture() {
  Outcome o;
  // National order u1..u12; the international table holds u1, u5 (national top 6)
  // and four institutions ranked 7th or lower nationally.
  std::vector<std::pair<std::string, std::string>> national_rows;
  for (int i = 1; i <= 12; ++i) national_rows.emplace_back("u" + std::to_string(i), std::to_string(i));
  const auto national = table_from("national", national_rows);
  const auto intl = table_from("intl", {{"u9", "120"}, {"u1", "150"}, {"u12", "201-300"}, {"u5", "201-300"},
                                        {"u7", "301-400"}, {"u8", "401-500"}});
  const auto got = agreement_level(intl, national).fraction;
  o.check(got == Fraction{2, 6}, "expected 2/6, got " + got.str());

  for (int s = 1; s <= 12; ++s) {
    std::vector<std::pair<std::string, std::string>> rows;
    for (int i = s; i >= 1; --i) rows.emplace_back("u" + std::to_string(i), std::to_string(s - i + 1));
    const auto f = agreement_level(table_from("intl", rows), national).fraction;
    o.check(f == Fraction{s, s}, "perfect case s=" + std::to_string(s) + " gave " + f.str());
  }
  if (o.ok) o.detail = "got " + got.str() + "; s/s for s=1..12";
  return o;
}

// 6. Published league tables: rank forms and cross-system rho.
Outcome league_table_roundtrip() {
  Outcome o;
  const auto tables = load_rankings(kFixtures / "league_tables_2013.csv");
  std::map<std::string, const RankingTable*> by;
  std::set<std::string> spanish;
  for (const auto& t : tables) {
    by[t.system_name] = &t;
    const auto ids = t.institutions();
    spanish.insert(ids.begin(), ids.end());
  }
  o.check(tables.size() == 4, "expected 4 tables");
  if (!o.ok) return o;
  const auto* sh = by.at("Shanghai")->find("Barcelona");
  const auto* ntu = by.at("NTU")->find("Barcelona");
  o.check(sh && sh->rank == RankValue::interval(201, 300), "Shanghai Barcelona not interval(201,300)");
  o.check(ntu && ntu->rank == RankValue::exact(89), "NTU Barcelona not exact(89)");
  o.check(sh && sh->rank.effective_rank() == 250.5, "effective rank of 201-300 is not 250.5");
  o.check(by.at("Shanghai")->entries.size() == 10 && by.at("Leiden")->entries.size() == 15 &&
              by.at("QS")->entries.size() == 13 && by.at("NTU")->entries.size() == 13,
          "table sizes differ from 10/15/13/13");
  o.check(spanish.size() == 19, "expected 19 distinct institutions");

  double worst = 0.0;
  int pairs = 0;
  for (const auto& a : tables) {
    for (const auto& b : tables) {
      if (a.system_name == b.system_name) continue;
      const auto pair = compare_pair(a, b, spanish);
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& e : a.entries) {
        if (const auto* other = b.find(e.institution_id)) {
          x.push_back(e.rank.effective_rank());
          y.push_back(other->rank.effective_rank());
        }
      }
      o.check(pair.n == x.size(), a.system_name + " vs " + b.system_name + ": n differs");
      o.check(pair.rho.status == Rho::Status::value, a.system_name + " vs " + b.system_name + ": no rho");
      const double expected = oracle::spearman(x, y);
      const double diff = std::fabs(pair.rho.value - expected);
      worst = std::max(worst, diff);
      o.check(diff <= kRhoTol, a.system_name + " vs " + b.system_name + ": rho differs from oracle");
      ++pairs;
    }
  }
  if (o.ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "4 tables, %d ordered system pairs, max |diff|=%.1e", pairs, worst);
    o.detail = buf;
  }
  return o;
}

// 7. Rank-order invariances.
Outcome rank_invariances() {
  Outcome o;
  std::mt19937 rng(7007);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int field = 0; field < 100; ++field) {
    std::map<std::string, IndicatorSet> base;
    const int n = 2 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) base.emplace("i" + std::to_string(i), random_indicators(rng, "i" + std::to_string(i)));
    const double s = field == 0 ? 100.0 : scale(rng);  // field 0: fraction vs percentage
    auto scaled = base;
    for (auto& [_, ind] : scaled) {
      ind.pct_q1 *= s;
      ind.acit *= s;
      ind.topcit *= s;
    }
    o.check(argsort_desc(score_field(base)) == argsort_desc(score_field(scaled)),
            "argsort changed under QLIF scaling in field " + std::to_string(field));
  }

  // Permutation: the same records in any order give the same table.
  const auto journals = testing_support::quartile_journals();
  for (int field = 0; field < 100; ++field) {
    std::vector<PublicationRecord> records;
    const int n = 10 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      records.push_back(testing_support::paper("r" + std::to_string(i), "I" + std::to_string(rng() % 12),
                                               static_cast<std::int64_t>(rng() % 30),
                                               "Q" + std::to_string(1 + rng() % 4)));
    }
    auto table_of = [&](const std::vector<PublicationRecord>& recs) {
      const Corpus corpus(recs, journals, TimeWindow{2000, 2020});
      const auto ind = compute_indicators(corpus, top10_threshold(corpus), {"cat"});
      return build_ranking(score_field(ind.by_institution), "s", "f", std::nullopt);
    };
    const auto reference = table_of(records);
    auto shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto other = table_of(shuffled);
    bool same = reference.entries.size() == other.entries.size();
    for (std::size_t k = 0; same && k < reference.entries.size(); ++k) {
      same = reference.entries[k].institution_id == other.entries[k].institution_id &&
             reference.entries[k].rank == other.entries[k].rank && reference.entries[k].score == other.entries[k].score;
    }
    o.check(same, "table changed under record permutation in field " + std::to_string(field));
  }

  // Strictly monotone transforms, ties included.
  const std::vector<std::function<double(double)>> transforms = {
      [](double v) { return std::exp(v); }, [](double v) { return v * v * v + v; },
      [](double v) { return std::log1p(v) * 3.0 - 10.0; }, [](double v) { return 1e6 * v + 7.0; }};
  for (int field = 0; field < 100; ++field) {
    std::map<std::string, IndexScore> scores;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      const double v = static_cast<double>(rng() % 10) * 0.5;
      scores.emplace("i" + std::to_string(i), IndexScore{"i" + std::to_string(i), 1.0, v, v});
    }
    const auto reference = rank_values(build_ranking(scores, "s", "f", std::nullopt));
    for (const auto& f : transforms) {
      auto moved = scores;
      for (auto& [_, s] : moved) s.ifq2a = f(s.ifq2a);
      o.check(rank_values(build_ranking(moved, "s", "f", std::nullopt)) == reference,
              "rank values changed under a monotone transform in field " + std::to_string(field));
    }
  }
  if (o.ok) o.detail = "100 fields each: QLIF scaling, record permutation, 4 monotone transforms";
  return o;
}

// 8. Size-independence under k-fold replication.
Outcome replication() {
  Outcome o;
  std::mt19937 rng(8008);
  const auto journals = testing_support::quartile_journals();
  for (int field = 0; field < 100; ++field) {
    // N a multiple of 10 with distinct citation counts: the cut never falls on a tie.
    const int n = 10 * (1 + static_cast<int>(rng() % 20));
    std::vector<std::int64_t> cites(static_cast<std::size_t>(n));
    std::iota(cites.begin(), cites.end(), 0);
    std::shuffle(cites.begin(), cites.end(), rng);
    std::vector<PublicationRecord> records;
    for (int i = 0; i < n; ++i) {
      records.push_back(testing_support::paper("r" + std::to_string(i), "I" + std::to_string(rng() % 8),
                                               cites[static_cast<std::size_t>(i)] * 3,
                                               "Q" + std::to_string(1 + rng() % 4)));
    }
    auto indicators = [&](const std::vector<PublicationRecord>& recs) {
      const Corpus corpus(recs, journals, TimeWindow{2000, 2020});
      return compute_indicators(corpus, top10_threshold(corpus), {"cat"}).by_institution;
    };
    const auto base = indicators(records);
    const int k = 2 + static_cast<int>(rng() % 6);
    std::vector<PublicationRecord> replicated;
    for (int copy = 0; copy < k; ++copy) {
      for (auto r : records) {
        r.record_id += "#" + std::to_string(copy);
        replicated.push_back(r);
      }
    }
    const auto big = indicators(replicated);
    const std::string where = "field " + std::to_string(field) + ", k=" + std::to_string(k);
    o.check(big.size() == base.size(), where + ": institution set changed");
    for (const auto& [id, b] : base) {
      const auto it = big.find(id);
      if (it == big.end()) continue;
      const auto& r = it->second;
      o.check(r.ndoc == k * b.ndoc, where + ": ndoc did not scale by k");
      o.check(r.ncit == k * b.ncit, where + ": ncit did not scale by k");
      o.check(rel_close(r.acit, b.acit, kReplicationTol), where + ": acit changed");
      o.check(rel_close(r.pct_q1, b.pct_q1, kReplicationTol), where + ": pct_q1 changed");
      o.check(rel_close(r.topcit, b.topcit, kReplicationTol), where + ": topcit changed");
      o.check(rel_close(score(r).qlif, score(b).qlif, kReplicationTol), where + ": qlif changed");
    }
  }
  if (o.ok) o.detail = "100 fields, k in 2..7";
  return o;
}

// 9. End-to-end determinism over the shipped fixtures.
Outcome end_to_end() {
  Outcome o;
  const auto root = fs::temp_directory_path() / "unirank_acceptance";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> snaps;
  const std::vector<RunOptions> variants = {RunOptions{1, false}, RunOptions{1, false}, RunOptions{4, true},
                                            RunOptions{1, true}};
  for (std::size_t v = 0; v < variants.size(); ++v) {
    auto config = load_config(kFixtures / "config.json");
    config.out_dir = root / ("run" + std::to_string(v));
    std::ostringstream out;
    std::ostringstream err;
    const int rank = cmd_rank(config, out, err, variants[v]);
    const int compare = cmd_compare(config, out, err, variants[v]);
    o.check(rank == kExitOk, "rank exit " + std::to_string(rank) + ": " + err.str());
    o.check(compare == kExitOk, "compare exit " + std::to_string(compare) + ": " + err.str());
    snaps.push_back(snapshot(config.out_dir));
  }
  std::size_t reports = 0;
  for (const auto& [name, _] : snaps[0]) reports += name.rfind("concordance_", 0) == 0 ? 1 : 0;
  o.check(reports == 4, "expected 4 concordance reports, got " + std::to_string(reports));
  for (std::size_t v = 1; v < snaps.size(); ++v) {
    o.check(snaps[v] == snaps[0], "run " + std::to_string(v) + " differs from run 0");
  }
  if (o.ok) o.detail = std::to_string(snaps[0].size()) + " files identical across 4 runs (rerun, reversed, 4 jobs)";
  fs::remove_all(root);
  return o;
}

// 10. Quadrant partition.
Outcome quadrant_partition() {
  Outcome o;
  std::mt19937 rng(10010);
  const auto journals = testing_support::quartile_journals();
  for (int field = 0; field < 100; ++field) {
    std::vector<PublicationRecord> records;
    const int n = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) {
      records.push_back(testing_support::paper("r" + std::to_string(i), "I" + std::to_string(rng() % 25),
                                               static_cast<std::int64_t>(rng() % 50),
                                               "Q" + std::to_string(1 + rng() % 4)));
    }
    const Corpus corpus(records, journals, TimeWindow{2000, 2020});
    const auto scores = score_field(compute_indicators(corpus, top10_threshold(corpus), {"cat"}).by_institution);
    const auto map = classify_quadrants(scores);
    std::map<Quadrant, std::size_t> counts;
    for (const auto& [_, label] : map.labels) ++counts[label];
    std::size_t total = 0;
    for (const auto& [_, c] : counts) total += c;
    o.check(total == scores.size() && map.labels.size() == scores.size(),
            "labels do not partition field " + std::to_string(field));
  }
  const std::map<std::string, IndexScore> two = {{"a", IndexScore{"a", 2, 0, 0}}, {"b", IndexScore{"b", 0, 2, 0}}};
  const auto m = classify_quadrants(two);
  o.check(m.mean_qnif == 1.0 && m.mean_qlif == 1.0, "two-point means are not (1,1)");
  o.check(m.labels.at("a") == Quadrant::quantitative_only, "(2,0) not quantitative_only");
  o.check(m.labels.at("b") == Quadrant::qualitative_only, "(0,2) not qualitative_only");
  if (o.ok) o.detail = "100 fields partitioned; (2,0)->quantitative_only, (0,2)->qualitative_only";
  return o;
}

struct Criterion {
  int number;
  std::string name;
  double budget_sec;  // 0: no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "formula fidelity", kBudgetFormulaSec, formula_fidelity},
      {2, "h-index oracle", kBudgetHIndexSec, hindex_oracle},
      {3, "top-10% threshold oracle", kBudgetThresholdSec, threshold_oracle},
      {4, "spearman correctness", 0, spearman_checks},
      {5, "agreement fixture", 0, agreement_fixture},
      {6, "league-table round-trip", 0, league_table_roundtrip},
      {7, "rank-order invariances", 0, rank_invariances},
      {8, "size-independence under replication", 0, replication},
      {9, "end-to-end determinism", kBudgetEndToEndSec, end_to_end},
      {10, "quadrant partition", 0, quadrant_partition},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_sec > 0 && sec > c.budget_sec && outcome.ok) {
      outcome.ok = false;
      outcome.detail = "over time budget of " + std::to_string(c.budget_sec) + " s";
    }
    if (!outcome.ok) ++failures;
    std::printf("%s  %2d  %-38s %8.3f s  %s\n", outcome.ok ? "PASS" : "FAIL", c.number, c.name.c_str(), sec,
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
