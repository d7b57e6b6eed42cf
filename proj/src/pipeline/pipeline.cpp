#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include <json.hpp>

#include "coursekit/annotations.hpp"
#include "coursekit/error.hpp"
#include "coursekit/pipeline.hpp"

namespace coursekit {

namespace {

using json = nlohmann::json;

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

struct DocumentState {
  std::optional<Document> doc;
  ChunkMethod method = ChunkMethod::Auto;
  ChunkBoundaries boundaries;
  std::vector<Chunk> chunks;
  std::vector<std::string> titles;
  ChunkManifest manifest;
  std::vector<CourseRecord> records;
  std::optional<std::string> error;
};

}  // namespace

PipelineResources load_resources(const PipelineConfig& cfg, bool require_model) {
  cfg.validate();
  PipelineResources res;
  res.embeddings = EmbeddingTable::load(cfg.embeddings, cfg.vocab_limit);
  if (!cfg.stoplist.empty()) res.stoplist = Stoplist::load(cfg.stoplist);
  if (!cfg.background.empty()) res.background = BackgroundCorpus::load(cfg.background);
  if (!cfg.ngrams.empty()) res.ngrams = NgramTable::load(cfg.ngrams);
  if (!cfg.model.empty()) {
    res.model = load_model(cfg.model);
  } else if (require_model) {
    throw ArgumentError("no model configured");
  }
  if (res.model && res.model->input_dim != 2 * res.embeddings.dim()) {
    throw ArgumentError("model input size does not match the embedding dimension");
  }
  if (cfg.weights) {
    res.weights = *cfg.weights;
  } else {
    const auto records = load_annotations(cfg.annotations);
    const auto chunks = build_tuning_chunks(records, {}, res.background ? &*res.background : nullptr,
                                            &res.ngrams, &res.stoplist);
    res.weights = grid_search_weights(chunks, cfg.top_k, cfg.tune_step, cfg.jobs).weights;
  }
  return res;
}

ChunkMethod resolve_method(ChunkMethod m, const Document& doc) {
  if (m != ChunkMethod::Auto) return m;
  return doc.has_fonts() ? ChunkMethod::Syntactic : ChunkMethod::Semantic;
}

ChunkBoundaries chunk_document(const Document& doc, ChunkMethod method, const PipelineConfig& cfg,
                               const PipelineResources& res) {
  switch (resolve_method(method, doc)) {
    case ChunkMethod::Syntactic: return syntactic_chunk(doc, cfg.syntactic);
    case ChunkMethod::Semantic: return semantic_chunk(doc, res.embeddings, res.stoplist, cfg.semantic);
    case ChunkMethod::Hybrid: return hybrid_chunk(doc, res.embeddings, res.stoplist, cfg.semantic);
    case ChunkMethod::Auto: break;
  }
  throw ArgumentError("unresolved chunk method");
}

std::string format_course_records(const std::vector<CourseRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json rec;
    rec["doc_id"] = r.doc_id;
    rec["chunk"] = r.chunk;
    rec["start_line"] = r.start_line;
    rec["end_line"] = r.end_line;
    rec["start_page"] = r.start_page;
    json objectives = json::array();
    for (const auto& o : r.objectives) {
      objectives.push_back({{"text", o.text()},
                            {"verb", o.verb},
                            {"keyphrase", o.keyphrase},
                            {"score", o.score},
                            {"verb_confidence", o.verb_confidence}});
    }
    rec["objectives"] = std::move(objectives);
    rec["provenance"] = {{"method", r.provenance.method}, {"params_hash", r.provenance.params_hash}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::vector<CourseRecord> parse_course_records(std::string_view content, const std::string& source) {
  std::vector<CourseRecord> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json rec = json::parse(line);
      CourseRecord r;
      r.doc_id = rec.at("doc_id").get<std::string>();
      r.chunk = rec.at("chunk").get<std::size_t>();
      r.start_line = rec.at("start_line").get<std::size_t>();
      r.end_line = rec.at("end_line").get<std::size_t>();
      r.start_page = rec.at("start_page").get<int>();
      for (const auto& o : rec.at("objectives")) {
        r.objectives.push_back({o.at("verb").get<std::string>(), o.at("keyphrase").get<std::string>(),
                                o.at("score").get<double>(), o.at("verb_confidence").get<double>()});
      }
      r.provenance.method = rec.at("provenance").at("method").get<std::string>();
      r.provenance.params_hash = rec.at("provenance").at("params_hash").get<std::string>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, std::string("bad course record: ") + e.what());
    }
  }
  return out;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const std::vector<std::filesystem::path>& docs) {
  const PipelineResources res = load_resources(cfg, true);
  return run_pipeline(cfg, res, docs);
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const PipelineResources& res,
                            const std::vector<std::filesystem::path>& docs) {
  if (!res.model) throw ArgumentError("run_pipeline needs a verb model");
  const std::filesystem::path chunk_dir = cfg.out / "chunks";
  std::error_code ec;
  std::filesystem::create_directories(chunk_dir, ec);
  if (ec) throw IoError("cannot create " + chunk_dir.string() + ": " + ec.message());

  std::vector<DocumentState> states(docs.size());

  // Chunking.
  parallel_for(docs.size(), cfg.jobs, [&](std::size_t i) {
    DocumentState& st = states[i];
    try {
      st.doc = load_document(docs[i], cfg.page_lines);
      st.method = resolve_method(cfg.method, *st.doc);
      st.boundaries =
          cfg.no_chunk ? make_boundaries(*st.doc, {}) : chunk_document(*st.doc, st.method, cfg, res);
      st.chunks = split_chunks(*st.doc, st.boundaries);
      if (st.method == ChunkMethod::Syntactic && !cfg.no_chunk) {
        st.titles = chunk_titles(*st.doc, st.boundaries);
      }
    } catch (const std::exception& e) {
      st.error = e.what();
    }
  });

  // Duplicate document ids would overwrite each other's chunk files.
  std::set<std::string> seen_ids;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (states[i].error) continue;
    if (!seen_ids.insert(states[i].doc->id()).second) {
      states[i].error = "duplicate document id '" + states[i].doc->id() + "'";
    }
  }

  std::optional<BackgroundCorpus> batch_background;
  if (!res.background) {
    std::vector<std::string> texts;
    for (const auto& st : states) {
      if (st.error) continue;
      for (const auto& c : st.chunks) texts.push_back(c.text);
    }
    if (!texts.empty()) batch_background = BackgroundCorpus::from_texts(texts);
  }
  const BackgroundCorpus* background = res.background ? &*res.background : batch_background ? &*batch_background : nullptr;
  const std::string params_hash = cfg.params_hash();

  // Keyphrases, verbs and persistence.
  parallel_for(docs.size(), cfg.jobs, [&](std::size_t i) {
    DocumentState& st = states[i];
    if (st.error) return;
    try {
      st.manifest = materialize_chunks(*st.doc, st.boundaries, chunk_dir);

      const GraphRankExtractor extractor(res.stoplist);
      for (std::size_t c = 0; c < st.chunks.size(); ++c) {
        const Chunk& chunk = st.chunks[c];
        std::vector<std::string> siblings;
        for (std::size_t s = 0; s < st.chunks.size(); ++s) {
          if (s != c) siblings.push_back(st.chunks[s].text);
        }
        RankingContext ctx;
        ctx.chunk_text = chunk.text;
        ctx.sibling_chunks = siblings;
        ctx.section_titles = st.titles;
        ctx.background = background;
        ctx.ngrams = &res.ngrams;
        ctx.stoplist = &res.stoplist;
        ctx.extractor = &extractor;
        ctx.candidate_pool = cfg.candidate_pool;
        const auto ranked = rank_keyphrases(ctx, res.weights, cfg.top_k);
        const auto chunk_tokens = content_tokens(chunk.text, res.stoplist);

        CourseRecord rec;
        rec.doc_id = chunk.doc_id;
        rec.chunk = chunk.ordinal;
        rec.start_line = chunk.start_line;
        rec.end_line = chunk.end_line;
        rec.start_page = chunk.start_page;
        rec.objectives = generate_objectives(chunk_tokens, ranked, *res.model, res.embeddings, res.stoplist);
        rec.provenance = {std::string(to_string(st.method)), params_hash};
        st.records.push_back(std::move(rec));
      }
    } catch (const std::exception& e) {
      st.error = e.what();
      st.records.clear();
      st.manifest.clear();
    }
  });

  PipelineResult result;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto& st = states[i];
    if (st.error) {
      result.failures.push_back({docs[i].string(), *st.error});
      continue;
    }
    result.manifest.insert(result.manifest.end(), st.manifest.begin(), st.manifest.end());
    for (auto& r : st.records) result.records.push_back(std::move(r));
  }
  write_file(cfg.out / "manifest.jsonl", format_manifest(result.manifest));
  write_file(cfg.out / "records.jsonl", format_course_records(result.records));
  return result;
}

}  // namespace coursekit
