#include "coursekit/annotations.hpp"

#include <algorithm>

#include <json.hpp>

#include "coursekit/error.hpp"
#include "coursekit/eval.hpp"

namespace coursekit {

namespace {

using json = nlohmann::json;

}  // namespace

double AnnotationRecord::mean_rating() const { return coursekit::mean_rating(ratings); }

std::vector<AnnotationRecord> parse_annotations(std::string_view content, const std::string& source) {
  std::vector<AnnotationRecord> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    AnnotationRecord r;
    try {
      const json rec = json::parse(line);
      r.chunk_id = rec.at("chunk_id").get<std::string>();
      r.keyphrase = rec.at("keyphrase").get<std::string>();
      r.ratings = rec.at("ratings").get<std::vector<double>>();
      if (rec.contains("verb") && !rec["verb"].is_null()) r.verb = rec["verb"].get<std::string>();
      if (rec.contains("chunk_text")) r.chunk_text = rec["chunk_text"].get<std::string>();
      if (rec.contains("alpha")) r.alpha = rec["alpha"].get<double>();
      if (rec.contains("factors")) {
        const auto& f = rec["factors"];
        r.factors = FactorScores{f.at("alpha").get<double>(), f.at("beta").get<double>(),
                                 f.at("gamma").get<double>(), f.at("phi").get<double>(),
                                 f.at("theta").get<double>()};
      }
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, std::string("bad annotation record: ") + e.what());
    }
    if (r.ratings.empty()) throw ParseError(source, line_no, "annotation has no ratings");
    for (double x : r.ratings) {
      if (!(x >= 1.0 && x <= 3.0)) throw ParseError(source, line_no, "ratings must lie in [1, 3]");
    }
    if (r.factors) {
      for (double x : r.factors->as_array()) {
        if (!(x >= 0.0 && x <= 1.0)) throw ParseError(source, line_no, "factors must lie in [0, 1]");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  return parse_annotations(read_file(path), path.string());
}

std::string format_annotations(const std::vector<AnnotationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json rec;
    rec["chunk_id"] = r.chunk_id;
    rec["keyphrase"] = r.keyphrase;
    rec["ratings"] = r.ratings;
    if (r.verb) rec["verb"] = *r.verb;
    if (r.chunk_text) rec["chunk_text"] = *r.chunk_text;
    if (r.alpha) rec["alpha"] = *r.alpha;
    if (r.factors) {
      rec["factors"] = {{"alpha", r.factors->alpha}, {"beta", r.factors->beta},
                        {"gamma", r.factors->gamma}, {"phi", r.factors->phi},
                        {"theta", r.factors->theta}};
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace coursekit

namespace coursekit {

std::string doc_of_chunk(std::string_view chunk_id) {
  const auto dot = chunk_id.rfind('.');
  return std::string(dot == std::string_view::npos ? chunk_id : chunk_id.substr(0, dot));
}

std::vector<TuningChunk> build_tuning_chunks(const std::vector<AnnotationRecord>& records,
                                             const std::map<std::string, std::string>& chunk_texts,
                                             const BackgroundCorpus* background,
                                             const NgramTable* ngrams, const Stoplist* stoplist) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const AnnotationRecord*>> by_chunk;
  std::map<std::string, std::string> texts = chunk_texts;
  for (const auto& r : records) {
    auto [it, inserted] = by_chunk.try_emplace(r.chunk_id);
    if (inserted) order.push_back(r.chunk_id);
    it->second.push_back(&r);
    if (r.chunk_text && !texts.contains(r.chunk_id)) texts[r.chunk_id] = *r.chunk_text;
  }

  std::vector<TuningChunk> out;
  for (const auto& id : order) {
    const auto& recs = by_chunk[id];
    TuningChunk chunk;
    chunk.chunk_id = id;

    const bool need_factors =
        std::any_of(recs.begin(), recs.end(), [](const AnnotationRecord* r) { return !r->factors; });
    std::vector<FactorScores> computed;
    if (need_factors) {
      auto text = texts.find(id);
      if (text == texts.end()) {
        throw ArgumentError("no text for annotated chunk " + id + " and no precomputed factors");
      }
      std::vector<std::string> siblings;
      const std::string doc = doc_of_chunk(id);
      for (const auto& other : order) {
        if (other == id || doc_of_chunk(other) != doc) continue;
        if (auto t = texts.find(other); t != texts.end()) siblings.push_back(t->second);
      }
      std::vector<Keyphrase> candidates;
      for (const auto* r : recs) candidates.push_back({r->keyphrase, r->alpha.value_or(0.0)});
      RankingContext ctx;
      ctx.chunk_text = text->second;
      ctx.sibling_chunks = siblings;
      ctx.background = background;
      ctx.ngrams = ngrams;
      ctx.stoplist = stoplist;
      computed = compute_factors(candidates, ctx);
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
      chunk.candidates.push_back(
          {recs[i]->keyphrase, recs[i]->factors ? *recs[i]->factors : computed[i], recs[i]->mean_rating()});
    }
    out.push_back(std::move(chunk));
  }
  return out;
}

std::vector<Example> bloom_examples(const std::vector<AnnotationRecord>& records,
                                    const std::map<std::string, std::string>& chunk_texts,
                                    const EmbeddingTable& table, const Stoplist& stoplist,
                                    int classes) {
  check_class_count(classes);
  std::map<std::string, std::vector<std::string>> token_cache;
  std::vector<Example> out;
  for (const auto& r : records) {
    if (!r.verb) continue;
    const auto verb = parse_bloom_verb(*r.verb);
    if (!verb) throw ArgumentError("unknown verb '" + *r.verb + "' for chunk " + r.chunk_id);
    auto cached = token_cache.find(r.chunk_id);
    if (cached == token_cache.end()) {
      std::string_view text;
      if (r.chunk_text) {
        text = *r.chunk_text;
      } else if (auto it = chunk_texts.find(r.chunk_id); it != chunk_texts.end()) {
        text = it->second;
      } else {
        throw ArgumentError("no chunk text for " + r.chunk_id);
      }
      cached = token_cache.emplace(r.chunk_id, content_tokens(text, stoplist)).first;
    }
    const auto kp_tokens = content_tokens(r.keyphrase, stoplist);
    Example ex;
    ex.features = featurize(cached->second, kp_tokens, table).values();
    ex.label = verb_label(*verb, classes);
    ex.chunk_id = r.chunk_id;
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace coursekit
