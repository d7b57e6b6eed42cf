#include <algorithm>

#include "coursekit/chunkers.hpp"
#include "coursekit/error.hpp"

namespace coursekit {

std::vector<FontGroup> build_font_groups(const Document& doc) {
  if (!doc.has_fonts()) {
    throw UnsupportedDocumentError("document " + doc.id() + " has no font sizes");
  }
  std::vector<FontGroup> groups;
  const auto& lines = doc.lines();
  std::size_t i = 0;
  while (i < lines.size()) {
    const double size = *lines[i].font_size;
    std::size_t j = i + 1;
    while (j < lines.size() && *lines[j].font_size == size) ++j;
    groups.push_back({i, j - 1, size});
    i = j;
  }
  return groups;
}

ChunkBoundaries make_boundaries(const Document& doc, std::vector<std::size_t> line_starts) {
  std::sort(line_starts.begin(), line_starts.end());
  line_starts.erase(std::unique(line_starts.begin(), line_starts.end()), line_starts.end());
  if (line_starts.empty() || line_starts.front() != 0) line_starts.insert(line_starts.begin(), 0);
  if (line_starts.back() >= doc.size() && !doc.empty()) {
    throw ArgumentError("boundary " + std::to_string(line_starts.back()) + " beyond document " +
                        doc.id());
  }
  ChunkBoundaries b;
  b.doc_id = doc.id();
  b.page_starts.reserve(line_starts.size());
  for (std::size_t s : line_starts) b.page_starts.push_back(doc.empty() ? 1 : doc.page_of(s));
  b.line_starts = std::move(line_starts);
  return b;
}

std::string_view to_string(ChunkMethod m) {
  switch (m) {
    case ChunkMethod::Syntactic: return "syntactic";
    case ChunkMethod::Semantic: return "semantic";
    case ChunkMethod::Hybrid: return "hybrid";
    case ChunkMethod::Auto: return "auto";
  }
  return "auto";
}

ChunkMethod parse_chunk_method(std::string_view s) {
  if (s == "syntactic") return ChunkMethod::Syntactic;
  if (s == "semantic") return ChunkMethod::Semantic;
  if (s == "hybrid") return ChunkMethod::Hybrid;
  if (s == "auto") return ChunkMethod::Auto;
  throw ArgumentError("unknown chunk method '" + std::string(s) + "'");
}

}  // namespace coursekit
