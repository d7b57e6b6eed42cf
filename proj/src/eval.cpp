#include "coursekit/eval.hpp"

#include <algorithm>
#include <set>

#include "coursekit/error.hpp"

namespace coursekit {

PrecisionRecall boundary_f1(std::span<const int> system, std::span<const int> gold) {
  if (system.empty() || gold.empty()) throw ArgumentError("boundary lists must be non-empty");
  std::vector<int> sys(system.begin() + 1, system.end());
  std::vector<int> ref(gold.begin() + 1, gold.end());
  std::sort(sys.begin(), sys.end());
  std::sort(ref.begin(), ref.end());
  std::vector<int> common;
  std::set_intersection(sys.begin(), sys.end(), ref.begin(), ref.end(), std::back_inserter(common));
  const auto m = static_cast<double>(common.size());

  PrecisionRecall pr;
  if (sys.empty() && ref.empty()) {
    pr.precision = pr.recall = 1.0;
  } else {
    pr.precision = sys.empty() ? 0.0 : m / static_cast<double>(sys.size());
    pr.recall = ref.empty() ? 0.0 : m / static_cast<double>(ref.size());
  }
  const double denom = pr.precision + pr.recall;
  pr.f1 = denom > 0.0 ? 2.0 * pr.precision * pr.recall / denom : 0.0;
  return pr;
}

std::vector<int> collapse_page_starts(std::span<const int> page_starts,
                                      std::span<const std::size_t> line_starts) {
  if (page_starts.size() != line_starts.size()) throw ArgumentError("page/line boundary lengths differ");
  std::vector<int> out;
  std::set<std::pair<int, std::size_t>> seen;
  for (std::size_t i = 0; i < page_starts.size(); ++i) {
    if (seen.insert({page_starts[i], line_starts[i]}).second) out.push_back(page_starts[i]);
  }
  return out;
}

double p_at_n(std::span<const std::string> system_top_n, const std::map<std::string, double>& rated,
              double threshold) {
  if (system_top_n.empty()) throw ArgumentError("p_at_n: empty system list");
  std::size_t gold = 0;
  for (const auto& kp : system_top_n) {
    auto it = rated.find(kp);
    if (it != rated.end() && it->second >= threshold) ++gold;
  }
  return static_cast<double>(gold) / static_cast<double>(system_top_n.size());
}

double mean_rating(std::span<const double> ratings) {
  if (ratings.empty()) throw ArgumentError("mean_rating: no ratings");
  double s = 0.0;
  for (double r : ratings) s += r;
  return s / static_cast<double>(ratings.size());
}

std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> predictions,
                                                       std::span<const int> golds, int classes) {
  if (predictions.size() != golds.size()) throw ArgumentError("prediction/gold length mismatch");
  if (classes < 1) throw ArgumentError("class count must be positive");
  std::vector<std::vector<std::size_t>> m(static_cast<std::size_t>(classes),
                                          std::vector<std::size_t>(static_cast<std::size_t>(classes), 0));
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (golds[i] < 0 || golds[i] >= classes || predictions[i] < 0 || predictions[i] >= classes) {
      throw ArgumentError("label out of range");
    }
    ++m[static_cast<std::size_t>(golds[i])][static_cast<std::size_t>(predictions[i])];
  }
  return m;
}

double weighted_f1(std::span<const int> predictions, std::span<const int> golds, int classes) {
  if (golds.empty()) throw ArgumentError("weighted_f1: no examples");
  const auto m = confusion_matrix(predictions, golds, classes);
  const auto c = static_cast<std::size_t>(classes);
  double total = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    std::size_t tp = m[k][k];
    std::size_t support = 0;
    std::size_t predicted = 0;
    for (std::size_t j = 0; j < c; ++j) {
      support += m[k][j];
      predicted += m[j][k];
    }
    if (support == 0) continue;
    const double denom = static_cast<double>(support + predicted);
    const double f1 = denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
    total += f1 * static_cast<double>(support);
  }
  return total / static_cast<double>(golds.size());
}

}  // namespace coursekit
