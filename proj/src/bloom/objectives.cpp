#include <algorithm>

#include "coursekit/bloom.hpp"
#include "coursekit/error.hpp"

namespace coursekit {

std::vector<LearningObjective> generate_objectives(std::span<const std::string> chunk_tokens,
                                                   std::span<const ScoredKeyphrase> ranked,
                                                   const MlpModel& model,
                                                   const EmbeddingTable& table,
                                                   const Stoplist& stoplist) {
  if (model.input_dim != 2 * table.dim()) {
    throw ArgumentError("model expects " + std::to_string(model.input_dim) +
                        " features but the embedding table gives " + std::to_string(2 * table.dim()));
  }
  std::vector<LearningObjective> out;
  out.reserve(ranked.size());
  for (const auto& kp : ranked) {
    const auto kp_tokens = content_tokens(kp.keyphrase.text, stoplist);
    const Vector features = featurize(chunk_tokens, kp_tokens, table);
    const Prediction p = predict(model, features.span());
    LearningObjective lo;
    lo.verb = std::string(label_name(p.label, model.classes));
    lo.keyphrase = kp.keyphrase.text;
    lo.score = kp.score;
    lo.verb_confidence = p.probabilities[static_cast<std::size_t>(p.label)];
    out.push_back(std::move(lo));
  }
  return out;
}

}  // namespace coursekit
