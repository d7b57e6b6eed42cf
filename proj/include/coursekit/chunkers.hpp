#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coursekit/embeddings.hpp"
#include "coursekit/ingest.hpp"

namespace coursekit {

struct FontGroup {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  double font_size = 0.0;

  std::size_t length() const noexcept { return end - start + 1; }
  bool operator==(const FontGroup&) const = default;
};

struct IntRange {
  int min = 0;
  int max = 0;

  bool contains(long long v) const noexcept { return v >= min && v <= max; }
};

// Chunk statistics gathered for one candidate font size.
struct FontSizeStats {
  double font_size = 0.0;
  std::vector<std::size_t> boundaries;  // B(s): qualifying group starts
  std::size_t chunk_count = 0;
  std::size_t min_chunk_lines = 0;
  double mean_chunk_lines = 0.0;
  std::size_t max_chunk_lines = 0;
};

struct SyntacticParams {
  IntRange font_group_lines{1, 3};
  IntRange n_chunks{3, 20};
  int min_section_title_length = 2;
  // Optional extra rule; a size qualifies only if this also returns true.
  std::function<bool(const FontSizeStats&)> extra_rule;

  void validate() const;
};

struct SemanticParams {
  int min_par_to_stop = 80;
  int trim_par = 4;

  // Checks the chunker-level invariants (trim_par >= 2, min_par_to_stop >= 2 * trim_par).
  void validate() const;
};

struct ChunkBoundaries {
  std::string doc_id;
  std::vector<std::size_t> line_starts;
  std::vector<int> page_starts;

  bool operator==(const ChunkBoundaries&) const = default;
};

ChunkBoundaries make_boundaries(const Document& doc, std::vector<std::size_t> line_starts);

std::vector<FontGroup> build_font_groups(const Document& doc);

// Per-size statistics in descending font-size order.
std::vector<FontSizeStats> font_size_stats(const Document& doc, const std::vector<FontGroup>& groups,
                                           const SyntacticParams& p);

ChunkBoundaries syntactic_chunk(const Document& doc, const SyntacticParams& p = {});

// One split decision made by find_segments: the partition [start, start+size)
// in absolute indices and the chosen absolute boundary.
struct SplitRecord {
  std::size_t start = 0;
  std::size_t size = 0;
  std::size_t boundary = 0;
};

// Recursive divide-and-conquer split on minimum cosine similarity between the
// summed vectors above and below each candidate index.
std::vector<std::size_t> find_segments(std::span<const Vector> vectors, std::size_t start_index,
                                       const SemanticParams& p,
                                       std::vector<SplitRecord>* trace = nullptr);

std::vector<Vector> line_vectors(const Document& doc, const EmbeddingTable& table,
                                 const Stoplist& stoplist);

ChunkBoundaries semantic_chunk(const Document& doc, const EmbeddingTable& table,
                               const Stoplist& stoplist, const SemanticParams& p = {});

enum class GroupVectorMode { Sum, Mean };

struct HybridOptions {
  GroupVectorMode group_vectors = GroupVectorMode::Sum;
};

// Stopping size for the hybrid search, in font-group units.
int hybrid_stop_size(int min_par_to_stop, std::size_t lines, std::size_t groups);

ChunkBoundaries hybrid_chunk(const Document& doc, const EmbeddingTable& table,
                             const Stoplist& stoplist, const SemanticParams& p = {},
                             const HybridOptions& options = {});

struct Chunk {
  std::string doc_id;
  std::size_t ordinal = 0;
  std::size_t start_line = 0;
  std::size_t end_line = 0;  // inclusive
  int start_page = 1;
  std::string text;

  std::string id() const { return doc_id + "." + std::to_string(ordinal); }
};

std::vector<Chunk> split_chunks(const Document& doc, const ChunkBoundaries& b);

// First line of each chunk, the text the syntactic chunker treats as a heading.
std::vector<std::string> chunk_titles(const Document& doc, const ChunkBoundaries& b);

struct ChunkManifestRecord {
  std::string doc_id;
  std::size_t ordinal = 0;
  std::size_t start_line = 0;
  std::size_t end_line = 0;
  int start_page = 1;
  std::string file;

  bool operator==(const ChunkManifestRecord&) const = default;
};

using ChunkManifest = std::vector<ChunkManifestRecord>;

// Writes <doc_id>.<ordinal>.txt per chunk and <doc_id>.manifest.jsonl.
ChunkManifest materialize_chunks(const Document& doc, const ChunkBoundaries& b,
                                 const std::filesystem::path& out_dir);

std::string format_manifest(const ChunkManifest& manifest);
ChunkManifest parse_manifest(std::string_view content, const std::string& source = "<memory>");

enum class ChunkMethod { Syntactic, Semantic, Hybrid, Auto };

std::string_view to_string(ChunkMethod m);
ChunkMethod parse_chunk_method(std::string_view s);

}  // namespace coursekit
