#include <algorithm>
#include <memory>
#include <set>
#include <unordered_set>

#include "coursekit/bloom.hpp"
#include "coursekit/error.hpp"
#include "coursekit/eval.hpp"
#include "coursekit/random.hpp"

namespace coursekit {

std::vector<std::vector<std::string>> assign_chunk_folds(std::span<const Example> examples,
                                                         std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ArgumentError("need at least two folds");
  std::set<std::string> distinct;
  for (const auto& e : examples) distinct.insert(e.chunk_id);
  if (distinct.size() < folds) {
    throw ArgumentError("fewer chunks (" + std::to_string(distinct.size()) + ") than folds (" +
                        std::to_string(folds) + ")");
  }
  std::vector<std::string> chunks(distinct.begin(), distinct.end());
  Rng rng(seed);
  rng.shuffle(chunks);
  std::vector<std::vector<std::string>> out(folds);
  for (std::size_t i = 0; i < chunks.size(); ++i) out[i % folds].push_back(chunks[i]);
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

CrossValidationResult cross_validate(std::span<const Example> examples, std::size_t folds,
                                     const Trainer& trainer, int classes, std::uint64_t seed) {
  const auto assignment = assign_chunk_folds(examples, folds, seed);
  CrossValidationResult result;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::unordered_set<std::string> held_out(assignment[f].begin(), assignment[f].end());
    std::vector<Example> train;
    std::vector<const Example*> test;
    for (const auto& e : examples) {
      if (held_out.contains(e.chunk_id)) {
        test.push_back(&e);
      } else {
        train.push_back(e);
      }
    }
    const Classifier classify = trainer(train, f);
    std::vector<int> predictions;
    std::vector<int> golds;
    for (const Example* e : test) {
      predictions.push_back(classify(e->features));
      golds.push_back(e->label);
    }
    result.fold_f1.push_back(weighted_f1(predictions, golds, classes));
    result.test_chunks.push_back(assignment[f]);
  }
  double sum = 0.0;
  for (double x : result.fold_f1) sum += x;
  result.mean_f1 = sum / static_cast<double>(folds);
  return result;
}

CrossValidationResult cross_validate(std::span<const Example> examples, std::size_t folds,
                                     const TrainConfig& cfg, int classes) {
  const Trainer trainer = [&](std::span<const Example> train, std::size_t fold) -> Classifier {
    TrainConfig fold_cfg = cfg;
    fold_cfg.seed = cfg.seed + fold;
    auto model = std::make_shared<MlpModel>(train_mlp(train, fold_cfg, classes));
    return [model](std::span<const double> x) { return predict(*model, x).label; };
  };
  return cross_validate(examples, folds, trainer, classes, cfg.seed);
}

int majority_label(std::span<const Example> examples, int classes) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(classes), 0);
  for (const auto& e : examples) {
    if (e.label < 0 || e.label >= classes) throw ArgumentError("label out of range");
    ++counts[static_cast<std::size_t>(e.label)];
  }
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double majority_baseline(std::span<const Example> examples, int classes) {
  if (examples.empty()) throw ArgumentError("majority_baseline: no examples");
  const int label = majority_label(examples, classes);
  std::vector<int> predictions(examples.size(), label);
  std::vector<int> golds;
  golds.reserve(examples.size());
  for (const auto& e : examples) golds.push_back(e.label);
  return weighted_f1(predictions, golds, classes);
}

}  // namespace coursekit
