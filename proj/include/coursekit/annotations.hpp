#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coursekit/bloom.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

// One rated (chunk, keyphrase) pair. Optional fields let a file carry its own
// chunk text and precomputed factors.
struct AnnotationRecord {
  std::string chunk_id;
  std::string keyphrase;
  std::vector<double> ratings;
  std::optional<std::string> verb;
  std::optional<std::string> chunk_text;
  std::optional<FactorScores> factors;
  std::optional<double> alpha;

  double mean_rating() const;
};

std::vector<AnnotationRecord> parse_annotations(std::string_view content,
                                                const std::string& source = "<memory>");
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);
std::string format_annotations(const std::vector<AnnotationRecord>& records);

// Chunk id of the form "<doc_id>.<ordinal>" -> "<doc_id>".
std::string doc_of_chunk(std::string_view chunk_id);

// Groups records by chunk (first-appearance order) and fills in factors for
// records that do not carry them. Chunk text comes from the record or from
// chunk_texts; annotated chunks of the same document act as siblings.
std::vector<TuningChunk> build_tuning_chunks(const std::vector<AnnotationRecord>& records,
                                             const std::map<std::string, std::string>& chunk_texts,
                                             const BackgroundCorpus* background,
                                             const NgramTable* ngrams, const Stoplist* stoplist);

// Verb-labelled records as classifier examples. Records without a verb are
// skipped; the rest need chunk text from the record or from chunk_texts.
std::vector<Example> bloom_examples(const std::vector<AnnotationRecord>& records,
                                    const std::map<std::string, std::string>& chunk_texts,
                                    const EmbeddingTable& table, const Stoplist& stoplist,
                                    int classes);

}  // namespace coursekit
