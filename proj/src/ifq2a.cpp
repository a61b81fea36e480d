#include "unirank/ifq2a.hpp"

#include <cmath>
#include <vector>

namespace unirank {

IndexScore score(const IndicatorSet& ind) {
  IndexScore s;
  s.institution_id = ind.institution_id;
  const double quantity =
      static_cast<double>(ind.ndoc) * static_cast<double>(ind.ncit) * static_cast<double>(ind.h);
  const double quality = ind.pct_q1 * ind.acit * ind.topcit;
  s.qnif = std::cbrt(quantity);
  s.qlif = std::cbrt(quality);
  s.ifq2a = s.qnif * s.qlif;
  return s;
}

std::map<std::string, IndexScore> score_field(const std::map<std::string, IndicatorSet>& indicators) {
  std::map<std::string, IndexScore> out;
  for (const auto& [institution, ind] : indicators) out.emplace(institution, score(ind));
  return out;
}

std::string_view to_string(Quadrant quadrant) {
  switch (quadrant) {
    case Quadrant::both_outstanding:
      return "both_outstanding";
    case Quadrant::quantitative_only:
      return "quantitative_only";
    case Quadrant::qualitative_only:
      return "qualitative_only";
    case Quadrant::neither:
      return "neither";
  }
  return "neither";
}

double stable_mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  // Offsetting by the first element makes the mean of identical values exact.
  const double ref = values.front();
  double sum = 0.0;
  for (double v : values) sum += v - ref;
  return ref + sum / static_cast<double>(values.size());
}

QuadrantMap classify_quadrants(const std::map<std::string, IndexScore>& scores) {
  QuadrantMap out;
  std::vector<double> qnif;
  std::vector<double> qlif;
  for (const auto& [_, s] : scores) {
    qnif.push_back(s.qnif);
    qlif.push_back(s.qlif);
  }
  out.mean_qnif = stable_mean(qnif);
  out.mean_qlif = stable_mean(qlif);
  for (const auto& [institution, s] : scores) {
    const bool quantitative = s.qnif >= out.mean_qnif;
    const bool qualitative = s.qlif >= out.mean_qlif;
    Quadrant q = Quadrant::neither;
    if (quantitative && qualitative) {
      q = Quadrant::both_outstanding;
    } else if (quantitative) {
      q = Quadrant::quantitative_only;
    } else if (qualitative) {
      q = Quadrant::qualitative_only;
    }
    out.labels.emplace(institution, q);
  }
  return out;
}

}  // namespace unirank
