#include <algorithm>
#include <cctype>

#include "coursekit/chunkers.hpp"
#include "coursekit/error.hpp"

namespace coursekit {

namespace {

// Code points that are not ASCII whitespace.
std::size_t visible_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) == 0x80) continue;
    if (std::isspace(c)) continue;
    ++n;
  }
  return n;
}

}  // namespace

void SyntacticParams::validate() const {
  if (font_group_lines.min < 1 || font_group_lines.min > font_group_lines.max) {
    throw ArgumentError("font_group_lines must satisfy 1 <= min <= max");
  }
  if (n_chunks.min < 0 || n_chunks.min > n_chunks.max) {
    throw ArgumentError("n_chunks must satisfy 0 <= min <= max");
  }
  if (min_section_title_length < 1) throw ArgumentError("min_section_title_length must be >= 1");
}

std::vector<FontSizeStats> font_size_stats(const Document& doc, const std::vector<FontGroup>& groups,
                                           const SyntacticParams& p) {
  std::vector<double> sizes;
  for (const auto& g : groups) sizes.push_back(g.font_size);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  std::vector<FontSizeStats> out;
  out.reserve(sizes.size());
  for (double s : sizes) {
    FontSizeStats st;
    st.font_size = s;
    for (const auto& g : groups) {
      if (g.font_size != s) continue;
      if (!p.font_group_lines.contains(static_cast<long long>(g.length()))) continue;
      if (visible_length(doc.lines()[g.start].text) <
          static_cast<std::size_t>(p.min_section_title_length)) {
        continue;
      }
      st.boundaries.push_back(g.start);
    }
    st.chunk_count = st.boundaries.size();

    std::vector<std::size_t> starts = st.boundaries;
    if (starts.empty() || starts.front() != 0) starts.insert(starts.begin(), 0);
    std::size_t total = 0;
    st.min_chunk_lines = doc.size();
    for (std::size_t i = 0; i < starts.size(); ++i) {
      const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : doc.size();
      const std::size_t len = end - starts[i];
      total += len;
      st.min_chunk_lines = std::min(st.min_chunk_lines, len);
      st.max_chunk_lines = std::max(st.max_chunk_lines, len);
    }
    st.mean_chunk_lines = static_cast<double>(total) / static_cast<double>(starts.size());
    out.push_back(std::move(st));
  }
  return out;
}

ChunkBoundaries syntactic_chunk(const Document& doc, const SyntacticParams& p) {
  p.validate();
  const auto groups = build_font_groups(doc);
  for (const auto& st : font_size_stats(doc, groups, p)) {
    if (!p.n_chunks.contains(static_cast<long long>(st.chunk_count))) continue;
    if (p.extra_rule && !p.extra_rule(st)) continue;
    return make_boundaries(doc, st.boundaries);
  }
  return make_boundaries(doc, {});
}

}  // namespace coursekit
