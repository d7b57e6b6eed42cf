#include <algorithm>
#include <chrono>
#include <cstdio>

#include "coursekit/error.hpp"
#include "coursekit/pipeline.hpp"

namespace coursekit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

ThroughputReport measure_throughput(const PipelineConfig& cfg, const PipelineResources& res,
                                    const std::vector<std::filesystem::path>& docs) {
  if (docs.empty()) throw ArgumentError("throughput needs at least one document");
  if (!res.model) throw ArgumentError("throughput needs a verb model");
  ThroughputReport report;
  report.documents = docs.size();
  const GraphRankExtractor extractor(res.stoplist);
  const int pool = std::max(cfg.candidate_pool, cfg.top_k);

  for (const auto& path : docs) {
    auto t0 = Clock::now();
    const Document doc = load_document(path, cfg.page_lines);
    const ChunkMethod method = resolve_method(cfg.method, doc);
    const ChunkBoundaries b = cfg.no_chunk ? make_boundaries(doc, {}) : chunk_document(doc, method, cfg, res);
    const auto chunks = split_chunks(doc, b);
    report.chunking += seconds_since(t0);

    std::vector<std::string> texts;
    for (const auto& c : chunks) texts.push_back(c.text);
    const auto background = res.background ? *res.background : BackgroundCorpus::from_texts(texts);
    std::vector<std::string> titles;
    if (method == ChunkMethod::Syntactic && !cfg.no_chunk) titles = chunk_titles(doc, b);

    for (std::size_t c = 0; c < chunks.size(); ++c) {
      std::vector<std::string> siblings;
      for (std::size_t s = 0; s < chunks.size(); ++s) {
        if (s != c) siblings.push_back(texts[s]);
      }
      RankingContext ctx;
      ctx.chunk_text = texts[c];
      ctx.sibling_chunks = siblings;
      ctx.section_titles = titles;
      ctx.background = &background;
      ctx.ngrams = &res.ngrams;
      ctx.stoplist = &res.stoplist;
      ctx.extractor = &extractor;
      ctx.candidate_pool = cfg.candidate_pool;

      t0 = Clock::now();
      auto candidates = extractor.extract(texts[c], pool);
      report.keyphrase += seconds_since(t0);

      t0 = Clock::now();
      const auto factors = compute_factors(candidates, ctx);
      std::vector<ScoredKeyphrase> scored;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        scored.push_back({std::move(candidates[i]), factors[i], 0.0});
      }
      auto ranked = order_by_score(std::move(scored), res.weights);
      if (ranked.size() > static_cast<std::size_t>(cfg.top_k)) ranked.resize(static_cast<std::size_t>(cfg.top_k));
      report.reranking += seconds_since(t0);

      t0 = Clock::now();
      const auto tokens = content_tokens(texts[c], res.stoplist);
      generate_objectives(tokens, ranked, *res.model, res.embeddings, res.stoplist);
      report.bloom += seconds_since(t0);
    }
  }
  const double n = static_cast<double>(docs.size());
  report.chunking /= n;
  report.keyphrase /= n;
  report.reranking /= n;
  report.bloom /= n;
  return report;
}

std::string format_throughput(const ThroughputReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "{\"documents\":%zu,\"chunking\":%.6f,\"keyphrase\":%.6f,\"reranking\":%.6f,\"bloom\":%.6f}\n",
                r.documents, r.chunking, r.keyphrase, r.reranking, r.bloom);
  return buf;
}

}  // namespace coursekit
