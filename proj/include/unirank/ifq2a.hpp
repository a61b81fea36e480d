#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "unirank/indicators.hpp"

namespace unirank {

/// Quantitative, qualitative, and composite scores of one institution.
struct IndexScore {
  std::string institution_id;
  double qnif = 0.0;   // cbrt(ndoc * ncit * h), size dependent
  double qlif = 0.0;   // cbrt(pct_q1 * acit * topcit), size independent
  double ifq2a = 0.0;  // qnif * qlif

  bool operator==(const IndexScore&) const = default;
};

IndexScore score(const IndicatorSet& indicators);

std::map<std::string, IndexScore> score_field(const std::map<std::string, IndicatorSet>& indicators);

/// Position relative to the field means of both dimensions. Sitting exactly on
/// a mean line counts as outstanding on that axis.
enum class Quadrant { both_outstanding, quantitative_only, qualitative_only, neither };

std::string_view to_string(Quadrant quadrant);

struct QuadrantMap {
  double mean_qnif = 0.0;
  double mean_qlif = 0.0;
  std::map<std::string, Quadrant> labels;
};

/// Unweighted means over the given institutions are the cut lines.
QuadrantMap classify_quadrants(const std::map<std::string, IndexScore>& scores);

/// Arithmetic mean that returns exactly x when every input equals x.
double stable_mean(const std::vector<double>& values);

}  // namespace unirank
