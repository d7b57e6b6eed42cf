// coursekit: chunk course documents, rank keyphrases and draft learning objectives.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coursekit/annotations.hpp"
#include "coursekit/error.hpp"
#include "coursekit/eval.hpp"
#include "coursekit/pipeline.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace coursekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flags or configuration; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string config;
  std::vector<std::string> set;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> jobs;
  bool no_chunk = false;
};

PipelineConfig resolve_config(const GlobalOptions& g) {
  try {
    PipelineConfig cfg = g.config.empty() ? PipelineConfig{} : load_config(g.config);
    for (const auto& kv : g.set) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
      apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (g.seed) cfg.seed = *g.seed;
    if (g.out) cfg.out = *g.out;
    if (g.jobs) cfg.jobs = *g.jobs;
    if (g.no_chunk) cfg.no_chunk = true;
    return cfg;
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void validate_or_usage(const PipelineConfig& cfg) {
  try {
    cfg.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

// Resources for commands that chunk without needing a model; each file is
// loaded only when configured.
PipelineResources light_resources(const PipelineConfig& cfg) {
  PipelineResources res;
  if (!cfg.embeddings.empty()) res.embeddings = EmbeddingTable::load(cfg.embeddings, cfg.vocab_limit);
  if (!cfg.stoplist.empty()) res.stoplist = Stoplist::load(cfg.stoplist);
  if (!cfg.background.empty()) res.background = BackgroundCorpus::load(cfg.background);
  if (!cfg.ngrams.empty()) res.ngrams = NgramTable::load(cfg.ngrams);
  if (cfg.weights) res.weights = *cfg.weights;
  return res;
}

void report_failure(const std::string& path, const std::string& message) {
  std::cerr << "coursekit: " << path << ": " << message << '\n';
}

json factors_json(const FactorScores& f) {
  return {{"alpha", f.alpha}, {"beta", f.beta}, {"gamma", f.gamma}, {"phi", f.phi}, {"theta", f.theta}};
}

int cmd_ingest(const PipelineConfig& cfg, const std::vector<std::string>& files) {
  int status = kExitOk;
  fs::create_directories(cfg.out);
  for (const auto& f : files) {
    try {
      const Document doc = load_document(f, cfg.page_lines);
      write_lines(doc, cfg.out / (doc.id() + ".lines.jsonl"));
      const int pages = doc.lines().empty() ? 0 : doc.lines().back().page;
      std::cout << json{{"doc_id", doc.id()},
                        {"lines", doc.lines().size()},
                        {"pages", pages},
                        {"fonts", doc.has_fonts()}}
                       .dump()
                << '\n';
    } catch (const std::exception& e) {
      report_failure(f, e.what());
      status = kExitPartial;
    }
  }
  return status;
}

int cmd_chunk(PipelineConfig cfg, const std::vector<std::string>& files, const std::string& method) {
  if (!method.empty()) {
    try {
      cfg.method = parse_chunk_method(method);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  const PipelineResources res = light_resources(cfg);
  const fs::path chunk_dir = cfg.out / "chunks";
  fs::create_directories(chunk_dir);
  int status = kExitOk;
  ChunkManifest all;
  for (const auto& f : files) {
    try {
      const Document doc = load_document(f, cfg.page_lines);
      const ChunkMethod m = resolve_method(cfg.method, doc);
      if (m != ChunkMethod::Syntactic && !cfg.no_chunk && cfg.embeddings.empty()) {
        throw ArgumentError(std::string(to_string(m)) + " chunking needs an embeddings file");
      }
      const ChunkBoundaries b = cfg.no_chunk ? make_boundaries(doc, {}) : chunk_document(doc, m, cfg, res);
      const auto manifest = materialize_chunks(doc, b, chunk_dir);
      all.insert(all.end(), manifest.begin(), manifest.end());
      std::cout << json{{"doc_id", doc.id()},
                        {"method", to_string(m)},
                        {"line_starts", b.line_starts},
                        {"page_starts", b.page_starts}}
                       .dump()
                << '\n';
    } catch (const std::exception& e) {
      report_failure(f, e.what());
      status = kExitPartial;
    }
  }
  write_file(cfg.out / "manifest.jsonl", format_manifest(all));
  return status;
}

int cmd_keyphrases(PipelineConfig cfg, const std::vector<std::string>& files, int top_k) {
  if (top_k > 0) cfg.top_k = top_k;
  validate_or_usage(cfg);
  const PipelineResources res = load_resources(cfg, false);
  const GraphRankExtractor extractor(res.stoplist);
  int status = kExitOk;
  for (const auto& f : files) {
    try {
      const Document doc = load_document(f, cfg.page_lines);
      const ChunkMethod m = resolve_method(cfg.method, doc);
      const ChunkBoundaries b = cfg.no_chunk ? make_boundaries(doc, {}) : chunk_document(doc, m, cfg, res);
      const auto chunks = split_chunks(doc, b);
      std::vector<std::string> texts;
      for (const auto& c : chunks) texts.push_back(c.text);
      const auto background = res.background ? *res.background : BackgroundCorpus::from_texts(texts);
      std::vector<std::string> titles;
      if (m == ChunkMethod::Syntactic && !cfg.no_chunk) titles = chunk_titles(doc, b);
      for (std::size_t i = 0; i < chunks.size(); ++i) {
        std::vector<std::string> siblings;
        for (std::size_t s = 0; s < chunks.size(); ++s) {
          if (s != i) siblings.push_back(texts[s]);
        }
        RankingContext ctx;
        ctx.chunk_text = texts[i];
        ctx.sibling_chunks = siblings;
        ctx.section_titles = titles;
        ctx.background = &background;
        ctx.ngrams = &res.ngrams;
        ctx.stoplist = &res.stoplist;
        ctx.extractor = &extractor;
        ctx.candidate_pool = cfg.candidate_pool;
        json kps = json::array();
        for (const auto& kp : rank_keyphrases(ctx, res.weights, cfg.top_k)) {
          kps.push_back({{"text", kp.keyphrase.text}, {"score", kp.score}, {"factors", factors_json(kp.factors)}});
        }
        std::cout << json{{"chunk_id", chunks[i].id()}, {"keyphrases", std::move(kps)}}.dump() << '\n';
      }
    } catch (const std::exception& e) {
      report_failure(f, e.what());
      status = kExitPartial;
    }
  }
  return status;
}

int cmd_objectives(PipelineConfig cfg, const std::vector<std::string>& files, const std::string& model,
                   int classes) {
  if (!model.empty()) cfg.model = model;
  if (cfg.model.empty()) throw UsageError("objectives needs --model or a model entry in the config");
  validate_or_usage(cfg);
  const PipelineResources res = load_resources(cfg, true);
  if (classes != 0 && res.model->classes != classes) {
    throw UsageError("model has " + std::to_string(res.model->classes) + " classes, --classes says " +
                     std::to_string(classes));
  }
  std::vector<fs::path> docs(files.begin(), files.end());
  const PipelineResult result = run_pipeline(cfg, res, docs);
  for (const auto& f : result.failures) report_failure(f.path, f.message);
  std::cout << format_course_records(result.records);
  return result.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_train_bloom(const PipelineConfig& cfg, const std::string& annotations, std::size_t folds,
                    int classes, int epochs, const std::string& model_out) {
  if (cfg.embeddings.empty()) throw UsageError("train-bloom needs an embeddings file");
  if (folds < 2) throw UsageError("--folds must be >= 2");
  const auto table = EmbeddingTable::load(cfg.embeddings, cfg.vocab_limit);
  const Stoplist stoplist = cfg.stoplist.empty() ? Stoplist{} : Stoplist::load(cfg.stoplist);
  const auto records = load_annotations(annotations.empty() ? cfg.annotations : fs::path(annotations));
  const auto examples = bloom_examples(records, {}, table, stoplist, classes);

  TrainConfig tc;
  tc.seed = cfg.seed;
  if (epochs > 0) tc.epochs = epochs;
  const auto cv = cross_validate(examples, folds, tc, classes);
  const double baseline = majority_baseline(examples, classes);
  const MlpModel model = train_mlp(examples, tc, classes);
  const fs::path out = model_out.empty() ? cfg.out / "model.txt" : fs::path(model_out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  save_model(model, out);
  std::cout << json{{"examples", examples.size()},
                    {"classes", classes},
                    {"fold_f1", cv.fold_f1},
                    {"mean_f1", cv.mean_f1},
                    {"majority_f1", baseline},
                    {"model", out.string()}}
                   .dump()
            << '\n';
  return kExitOk;
}

int cmd_tune_weights(const PipelineConfig& cfg, const std::string& annotations, double step, int top_k) {
  const Stoplist stoplist = cfg.stoplist.empty() ? Stoplist{} : Stoplist::load(cfg.stoplist);
  std::optional<BackgroundCorpus> background;
  if (!cfg.background.empty()) background = BackgroundCorpus::load(cfg.background);
  const NgramTable ngrams = cfg.ngrams.empty() ? NgramTable{} : NgramTable::load(cfg.ngrams);
  const auto records = load_annotations(annotations.empty() ? cfg.annotations : fs::path(annotations));
  const auto chunks =
      build_tuning_chunks(records, {}, background ? &*background : nullptr, &ngrams, &stoplist);
  const int k = top_k > 0 ? top_k : cfg.top_k;
  const auto result = grid_search_weights(chunks, k, step > 0 ? step : cfg.tune_step, cfg.jobs);
  std::cout << json{{"weights", format_weights(result.weights)},
                    {"objective", result.objective},
                    {"evaluated", result.evaluated}}
                   .dump()
            << '\n';
  return kExitOk;
}

// Gold file: one {"doc_id", "page_starts"} record per line. System boundaries
// come from a chunk manifest.
int cmd_evaluate(const PipelineConfig& cfg, const std::string& gold_path, const std::string& manifest_path) {
  const fs::path mpath = manifest_path.empty() ? cfg.out / "manifest.jsonl" : fs::path(manifest_path);
  const ChunkManifest manifest = parse_manifest(read_file(mpath), mpath.string());
  std::map<std::string, std::pair<std::vector<int>, std::vector<std::size_t>>> system;
  for (const auto& r : manifest) {
    auto& [pages, lines] = system[r.doc_id];
    pages.push_back(r.start_page);
    lines.push_back(r.start_line);
  }

  const std::string content = read_file(gold_path);
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  int status = kExitOk;
  double f1_sum = 0.0;
  std::size_t scored = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string doc_id;
    std::vector<int> gold;
    try {
      const json rec = json::parse(line);
      doc_id = rec.at("doc_id").get<std::string>();
      gold = rec.at("page_starts").get<std::vector<int>>();
    } catch (const json::exception& e) {
      throw ParseError(gold_path, line_no, e.what());
    }
    const auto it = system.find(doc_id);
    if (it == system.end()) {
      report_failure(gold_path, "no system boundaries for " + doc_id);
      status = kExitPartial;
      continue;
    }
    const auto pages = collapse_page_starts(it->second.first, it->second.second);
    const PrecisionRecall pr = boundary_f1(pages, gold);
    std::cout << json{{"doc_id", doc_id}, {"precision", pr.precision}, {"recall", pr.recall}, {"f1", pr.f1}}.dump()
              << '\n';
    f1_sum += pr.f1;
    ++scored;
  }
  std::cout << json{{"documents", scored}, {"mean_f1", scored ? f1_sum / static_cast<double>(scored) : 0.0}}.dump()
            << '\n';
  return status;
}

int cmd_query(const PipelineConfig& cfg, const std::string& query, std::size_t limit) {
  for (const auto& hit : query_objectives(cfg.out, query, limit)) {
    json objectives = json::array();
    for (const auto& o : hit.record.objectives) objectives.push_back(o.text());
    std::cout << json{{"doc_id", hit.record.doc_id},
                      {"chunk", hit.record.chunk},
                      {"score", hit.score},
                      {"objectives", std::move(objectives)}}
                     .dump()
              << '\n';
  }
  return kExitOk;
}

int cmd_throughput(const PipelineConfig& cfg, const std::vector<std::string>& files, const std::string& model) {
  PipelineConfig c = cfg;
  if (!model.empty()) c.model = model;
  validate_or_usage(c);
  const PipelineResources res = load_resources(c, true);
  std::vector<fs::path> docs(files.begin(), files.end());
  std::cout << format_throughput(measure_throughput(c, res, docs));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coursekit: chunk course documents, rank keyphrases, draft learning objectives"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "Key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", g.set, "Override a configuration entry (key=value)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--no-chunk", g.no_chunk, "Treat each document as a single chunk");

  std::vector<std::string> files;
  auto* ingest = app.add_subcommand("ingest", "Normalize documents into line records");
  ingest->add_option("files", files, "Documents (.jsonl line records or plain text)")->required();

  std::string method;
  auto* chunk = app.add_subcommand("chunk", "Split documents into chunks");
  chunk->add_option("files", files)->required();
  chunk->add_option("--method", method, "syntactic|semantic|hybrid|auto")
      ->check(CLI::IsMember({"syntactic", "semantic", "hybrid", "auto"}));

  int top_k = 0;
  auto* keyphrases = app.add_subcommand("keyphrases", "Rank keyphrases per chunk");
  keyphrases->add_option("files", files)->required();
  keyphrases->add_option("--top-k", top_k)->check(CLI::PositiveNumber);

  std::string model;
  int classes = 0;
  auto* objectives = app.add_subcommand("objectives", "Run the full pipeline and store course records");
  objectives->add_option("files", files)->required();
  objectives->add_option("--model", model, "Verb model file");
  objectives->add_option("--classes", classes)->check(CLI::IsMember({4, 10}));

  std::string annotations;
  std::size_t folds = 10;
  int train_classes = 10;
  int epochs = 0;
  std::string model_out;
  auto* train = app.add_subcommand("train-bloom", "Train the verb classifier with chunk-level CV");
  train->add_option("--annotations", annotations, "Annotation file with verbs");
  train->add_option("--folds", folds);
  train->add_option("--classes", train_classes)->check(CLI::IsMember({4, 10}));
  train->add_option("--epochs", epochs)->check(CLI::PositiveNumber);
  train->add_option("--model-out", model_out, "Where to write the model (default <out>/model.txt)");
  // Allows `train-bloom --seed N` as well as the global form.
  std::optional<std::uint64_t> train_seed;
  train->add_option("--seed", train_seed);

  double step = 0.0;
  auto* tune = app.add_subcommand("tune-weights", "Grid-search factor weights against annotations");
  tune->add_option("--annotations", annotations);
  tune->add_option("--step", step)->check(CLI::PositiveNumber);
  tune->add_option("--top-k", top_k)->check(CLI::PositiveNumber);

  std::string gold;
  std::string manifest;
  auto* evaluate = app.add_subcommand("evaluate", "Score chunk boundaries against gold page starts");
  evaluate->add_option("--gold", gold)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--manifest", manifest, "Chunk manifest (default <out>/manifest.jsonl)");

  std::string query;
  std::size_t limit = 10;
  auto* query_cmd = app.add_subcommand("query", "Search stored objectives");
  query_cmd->add_option("text", query)->required();
  query_cmd->add_option("--limit", limit);

  auto* throughput = app.add_subcommand("throughput", "Time each pipeline stage per document");
  throughput->add_option("files", files)->required();
  throughput->add_option("--model", model);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train_seed) g.seed = train_seed;
    const PipelineConfig cfg = resolve_config(g);
    if (*ingest) return cmd_ingest(cfg, files);
    if (*chunk) return cmd_chunk(cfg, files, method);
    if (*keyphrases) return cmd_keyphrases(cfg, files, top_k);
    if (*objectives) return cmd_objectives(cfg, files, model, classes);
    if (*train) return cmd_train_bloom(cfg, annotations, folds, train_classes, epochs, model_out);
    if (*tune) return cmd_tune_weights(cfg, annotations, step, top_k);
    if (*evaluate) return cmd_evaluate(cfg, gold, manifest);
    if (*query_cmd) return cmd_query(cfg, query, limit);
    if (*throughput) return cmd_throughput(cfg, files, model);
  } catch (const UsageError& e) {
    std::cerr << "coursekit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "coursekit: " << e.what() << '\n';
    return kExitPartial;
  }
  return kExitUsage;
}
