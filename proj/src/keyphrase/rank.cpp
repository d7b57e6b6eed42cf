#include <algorithm>
#include <optional>

#include "coursekit/error.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

std::vector<FactorScores> compute_factors(std::span<const Keyphrase> candidates,
                                          const RankingContext& ctx) {
  const Stoplist empty_stoplist;
  const Stoplist& stoplist = ctx.stoplist ? *ctx.stoplist : empty_stoplist;

  std::optional<BackgroundCorpus> local_bg;
  const BackgroundCorpus* bg = ctx.background;
  if (bg == nullptr) {
    std::vector<std::string> texts{std::string(ctx.chunk_text)};
    texts.insert(texts.end(), ctx.sibling_chunks.begin(), ctx.sibling_chunks.end());
    local_bg = BackgroundCorpus::from_texts(texts);
    bg = &*local_bg;
  }
  const NgramTable empty_table;
  const NgramTable& ngrams = ctx.ngrams ? *ctx.ngrams : empty_table;

  const auto beta = beta_tfidf(candidates, ctx.chunk_text, *bg);
  const auto gamma = gamma_icf(candidates, ctx.sibling_chunks);
  const auto phi = phi_ngram(candidates, ngrams);

  std::vector<FactorScores> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    FactorScores f;
    f.alpha = std::clamp(candidates[i].alpha, 0.0, 1.0);
    f.beta = beta[i];
    f.gamma = gamma[i];
    f.phi = phi[i];
    f.theta = theta_title_overlap(candidates[i], ctx.section_titles, stoplist);
    out.push_back(f);
  }
  return out;
}

std::vector<ScoredKeyphrase> order_by_score(std::vector<ScoredKeyphrase> scored,
                                            const WeightVector& w) {
  for (auto& s : scored) s.score = combined_score(s.factors, w);
  std::stable_sort(scored.begin(), scored.end(), [](const ScoredKeyphrase& a, const ScoredKeyphrase& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.keyphrase.alpha != b.keyphrase.alpha) return a.keyphrase.alpha > b.keyphrase.alpha;
    return a.keyphrase.text < b.keyphrase.text;
  });
  return scored;
}

std::vector<ScoredKeyphrase> rank_keyphrases(const RankingContext& ctx, const WeightVector& w, int k) {
  if (k < 1) throw ArgumentError("k must be >= 1");
  std::vector<Keyphrase> candidates;
  const int pool = std::max(ctx.candidate_pool, k);
  if (ctx.extractor) {
    candidates = ctx.extractor->extract(ctx.chunk_text, pool);
  } else {
    candidates = GraphRankExtractor(ctx.stoplist ? *ctx.stoplist : Stoplist{})
                     .extract(ctx.chunk_text, pool);
  }
  const auto factors = compute_factors(candidates, ctx);
  std::vector<ScoredKeyphrase> scored;
  scored.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    scored.push_back({std::move(candidates[i]), factors[i], 0.0});
  }
  auto ranked = order_by_score(std::move(scored), w);
  if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(static_cast<std::size_t>(k));
  return ranked;
}

}  // namespace coursekit
