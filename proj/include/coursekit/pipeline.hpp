#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coursekit/bloom.hpp"
#include "coursekit/chunkers.hpp"
#include "coursekit/embeddings.hpp"
#include "coursekit/ingest.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

struct PipelineConfig {
  ChunkMethod method = ChunkMethod::Auto;
  SyntacticParams syntactic;
  SemanticParams semantic;
  std::filesystem::path embeddings;
  int vocab_limit = kDefaultVocabLimit;
  std::filesystem::path stoplist;
  std::optional<WeightVector> weights = WeightVector::bank();  // empty means "tune"
  std::filesystem::path annotations;    // used when tuning
  double tune_step = 0.05;
  int top_k = 5;
  int candidate_pool = 10;
  std::filesystem::path model;
  std::filesystem::path background;  // optional; the batch's own chunks otherwise
  std::filesystem::path ngrams;      // optional
  std::filesystem::path out = "out";
  int page_lines = kDefaultPageLines;
  bool no_chunk = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;

  void validate() const;
  // Hash of the boundary-affecting parameters, hex encoded.
  std::string params_hash() const;
};

// Flat "key = value" text; '#' starts a comment.
PipelineConfig parse_config(std::string_view content, const std::string& source = "<memory>");
PipelineConfig load_config(const std::filesystem::path& path);
void apply_config_entry(PipelineConfig& cfg, std::string_view key, std::string_view value);

struct Provenance {
  std::string method;
  std::string params_hash;
};

struct CourseRecord {
  std::string doc_id;
  std::size_t chunk = 0;
  std::size_t start_line = 0;
  std::size_t end_line = 0;
  int start_page = 1;
  std::vector<LearningObjective> objectives;
  Provenance provenance;
};

std::string format_course_records(const std::vector<CourseRecord>& records);
std::vector<CourseRecord> parse_course_records(std::string_view content,
                                               const std::string& source = "<memory>");

// Read-only state shared by every document in a run.
struct PipelineResources {
  EmbeddingTable embeddings{1, 1};
  Stoplist stoplist;
  std::optional<BackgroundCorpus> background;
  NgramTable ngrams;
  std::optional<MlpModel> model;
  WeightVector weights;
};

PipelineResources load_resources(const PipelineConfig& cfg, bool require_model = true);

// Resolves "auto" against the document.
ChunkMethod resolve_method(ChunkMethod m, const Document& doc);

ChunkBoundaries chunk_document(const Document& doc, ChunkMethod method, const PipelineConfig& cfg,
                               const PipelineResources& res);

struct DocumentFailure {
  std::string path;
  std::string message;
};

struct PipelineResult {
  std::vector<CourseRecord> records;
  std::vector<DocumentFailure> failures;
  ChunkManifest manifest;
};

// Chunk, rank keyphrases, predict verbs, and persist
// out/chunks/*, out/manifest.jsonl and out/records.jsonl.
PipelineResult run_pipeline(const PipelineConfig& cfg, const std::vector<std::filesystem::path>& docs);
PipelineResult run_pipeline(const PipelineConfig& cfg, const PipelineResources& res,
                            const std::vector<std::filesystem::path>& docs);

struct QueryHit {
  CourseRecord record;
  std::size_t score = 0;
};

std::vector<QueryHit> query_objectives(const std::filesystem::path& store, std::string_view query,
                                       std::size_t limit);
std::vector<QueryHit> rank_records(const std::vector<CourseRecord>& records, std::string_view query,
                                   std::size_t limit);

struct ThroughputReport {
  std::size_t documents = 0;
  double chunking = 0.0;
  double keyphrase = 0.0;
  double reranking = 0.0;
  double bloom = 0.0;
};

ThroughputReport measure_throughput(const PipelineConfig& cfg, const PipelineResources& res,
                                    const std::vector<std::filesystem::path>& docs);
std::string format_throughput(const ThroughputReport& r);

}  // namespace coursekit
