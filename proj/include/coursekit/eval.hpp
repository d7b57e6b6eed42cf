#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace coursekit {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Page-level chunk boundary agreement. The first boundary of each list is
// dropped and matching is multiset intersection, so a duplicated system page
// matches at most one gold page.
PrecisionRecall boundary_f1(std::span<const int> system, std::span<const int> gold);

// Collapses boundaries that map to the same (page, line) pair.
std::vector<int> collapse_page_starts(std::span<const int> page_starts,
                                      std::span<const std::size_t> line_starts);

inline constexpr double kGoldRatingThreshold = 1.5;

double p_at_n(std::span<const std::string> system_top_n,
              const std::map<std::string, double>& rated,
              double threshold = kGoldRatingThreshold);

double mean_rating(std::span<const double> ratings);

// confusion[gold][predicted]
std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> predictions,
                                                       std::span<const int> golds, int classes);

double weighted_f1(std::span<const int> predictions, std::span<const int> golds, int classes);

}  // namespace coursekit
