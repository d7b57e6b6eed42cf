#include <algorithm>
#include <cmath>
#include <limits>

#include "coursekit/chunkers.hpp"
#include "coursekit/error.hpp"
#include "coursekit/kernels.hpp"

namespace coursekit {

namespace {

double span_cosine(std::span<const double> u, std::span<const double> v) {
  const auto& k = kernels::active();
  const double nu = k.dot(u.data(), u.data(), u.size());
  const double nv = k.dot(v.data(), v.data(), v.size());
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(k.dot(u.data(), v.data(), u.size()) / (std::sqrt(nu) * std::sqrt(nv)), -1.0,
                    1.0);
}

class SegmentSearch {
 public:
  SegmentSearch(std::span<const Vector> vectors, const SemanticParams& p,
                std::vector<SplitRecord>* trace)
      : vectors_(vectors),
        stop_(static_cast<std::size_t>(p.min_par_to_stop)),
        trim_(static_cast<std::size_t>(p.trim_par)),
        trace_(trace),
        dim_(vectors.front().size()),
        top_(dim_),
        bottom_(dim_) {}

  // Splits [begin, end) of the local vectors; offset converts to absolute indices.
  void run(std::size_t begin, std::size_t end, std::size_t offset, std::vector<std::size_t>& out) {
    const std::size_t n = end - begin;
    if (n <= stop_) return;
    const std::size_t lo = std::max<std::size_t>(1, n / trim_);
    const std::size_t hi = std::min(n - 1, n - n / trim_);

    const auto& k = kernels::active();
    std::fill(top_.begin(), top_.end(), 0.0);
    std::fill(bottom_.begin(), bottom_.end(), 0.0);
    for (std::size_t i = begin; i < begin + lo; ++i) k.add(vectors_[i].span().data(), top_.data(), dim_);
    for (std::size_t i = begin + lo; i < end; ++i) k.add(vectors_[i].span().data(), bottom_.data(), dim_);

    std::size_t best = lo;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i <= hi; ++i) {
      const double c = span_cosine(top_, bottom_);
      if (c < best_score) {
        best_score = c;
        best = i;
      }
      const double* v = vectors_[begin + i].span().data();
      k.add(v, top_.data(), dim_);
      k.sub(v, bottom_.data(), dim_);
    }

    out.push_back(offset + begin + best);
    if (trace_) trace_->push_back({offset + begin, n, offset + begin + best});
    run(begin, begin + best, offset, out);
    run(begin + best, end, offset, out);
  }

 private:
  std::span<const Vector> vectors_;
  std::size_t stop_;
  std::size_t trim_;
  std::vector<SplitRecord>* trace_;
  std::size_t dim_;
  std::vector<double> top_;
  std::vector<double> bottom_;
};

}  // namespace

void SemanticParams::validate() const {
  if (trim_par < 2) throw ArgumentError("trim_par must be >= 2");
  if (min_par_to_stop < 2 * trim_par) throw ArgumentError("min_par_to_stop must be >= 2 * trim_par");
}

std::vector<std::size_t> find_segments(std::span<const Vector> vectors, std::size_t start_index,
                                       const SemanticParams& p, std::vector<SplitRecord>* trace) {
  if (vectors.empty()) throw ArgumentError("find_segments: no vectors");
  if (p.trim_par < 2) throw ArgumentError("find_segments: trim_par must be >= 2");
  if (p.min_par_to_stop < 1) throw ArgumentError("find_segments: min_par_to_stop must be >= 1");
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw ArgumentError("find_segments: vectors differ in length");
  }
  std::vector<std::size_t> out;
  SegmentSearch(vectors, p, trace).run(0, vectors.size(), start_index, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> line_vectors(const Document& doc, const EmbeddingTable& table,
                                 const Stoplist& stoplist) {
  std::vector<Vector> out;
  out.reserve(doc.size());
  for (const auto& line : doc.lines()) {
    const auto tokens = content_tokens(line.text, stoplist);
    out.push_back(mean_bow(tokens, table));
  }
  return out;
}

ChunkBoundaries semantic_chunk(const Document& doc, const EmbeddingTable& table,
                               const Stoplist& stoplist, const SemanticParams& p) {
  p.validate();
  if (doc.empty()) throw EmptyDocumentError("document " + doc.id() + " is empty");
  const auto vectors = line_vectors(doc, table, stoplist);
  return make_boundaries(doc, find_segments(vectors, 0, p));
}

int hybrid_stop_size(int min_par_to_stop, std::size_t lines, std::size_t groups) {
  if (lines == 0) return 4;
  const auto scaled = static_cast<long long>(min_par_to_stop) * static_cast<long long>(groups) /
                      static_cast<long long>(lines);
  return static_cast<int>(std::max<long long>(4, scaled));
}

ChunkBoundaries hybrid_chunk(const Document& doc, const EmbeddingTable& table,
                             const Stoplist& stoplist, const SemanticParams& p,
                             const HybridOptions& options) {
  p.validate();
  const auto groups = build_font_groups(doc);
  const auto lines = line_vectors(doc, table, stoplist);

  std::vector<Vector> group_vectors;
  group_vectors.reserve(groups.size());
  for (const auto& g : groups) {
    Vector v(table.dim());
    for (std::size_t i = g.start; i <= g.end; ++i) kernels::add(lines[i].span(), v.span());
    if (options.group_vectors == GroupVectorMode::Mean) {
      const double n = static_cast<double>(g.length());
      for (std::size_t d = 0; d < v.size(); ++d) v[d] /= n;
    }
    group_vectors.push_back(std::move(v));
  }

  SemanticParams group_params = p;
  group_params.min_par_to_stop = hybrid_stop_size(p.min_par_to_stop, doc.size(), groups.size());
  std::vector<std::size_t> starts;
  for (std::size_t g : find_segments(group_vectors, 0, group_params)) starts.push_back(groups[g].start);
  return make_boundaries(doc, std::move(starts));
}

}  // namespace coursekit
