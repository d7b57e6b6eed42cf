#include <algorithm>
#include <set>

#include "coursekit/error.hpp"
#include "coursekit/pipeline.hpp"

namespace coursekit {

std::vector<QueryHit> rank_records(const std::vector<CourseRecord>& records, std::string_view query,
                                   std::size_t limit) {
  const auto q = tokenize(query);
  const std::set<std::string> query_tokens(q.begin(), q.end());
  std::vector<QueryHit> hits;
  for (const auto& r : records) {
    std::set<std::string> tokens;
    for (const auto& o : r.objectives) {
      for (auto& t : tokenize(o.text())) tokens.insert(std::move(t));
    }
    std::size_t score = 0;
    for (const auto& t : query_tokens) score += tokens.count(t);
    if (score > 0) hits.push_back({r, score});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const QueryHit& a, const QueryHit& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.record.doc_id != b.record.doc_id) return a.record.doc_id < b.record.doc_id;
    return a.record.chunk < b.record.chunk;
  });
  if (hits.size() > limit) hits.resize(limit);
  return hits;
}

std::vector<QueryHit> query_objectives(const std::filesystem::path& store, std::string_view query,
                                       std::size_t limit) {
  if (!std::filesystem::is_directory(store)) {
    throw IoError("store not found: " + store.string());
  }
  const auto path = store / "records.jsonl";
  if (!std::filesystem::exists(path)) return {};
  return rank_records(parse_course_records(read_file(path), path.string()), query, limit);
}

}  // namespace coursekit
