#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "coursekit/error.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

namespace {

constexpr std::string_view kBreakChars = ",.:;\"'()";

struct PositionedToken {
  std::string text;
  bool break_before = false;
};

bool has_alpha(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c) || c >= 0x80; });
}

// tokenize() plus a flag marking where stripped punctuation separated two tokens.
std::vector<PositionedToken> positioned_tokens(std::string_view text) {
  std::vector<PositionedToken> out;
  bool pending_break = false;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    const std::string_view raw = text.substr(i, j - i);
    i = j;
    auto tokens = tokenize(raw);
    if (tokens.empty()) {
      pending_break = true;
      continue;
    }
    const bool leading = kBreakChars.find(raw.front()) != std::string_view::npos;
    const bool trailing = kBreakChars.find(raw.back()) != std::string_view::npos;
    out.push_back({std::move(tokens.front()), pending_break || leading});
    pending_break = trailing;
  }
  return out;
}

}  // namespace

GraphRankExtractor::GraphRankExtractor(Stoplist stoplist, GraphRankOptions options)
    : stoplist_(std::move(stoplist)), options_(options) {
  if (options_.window < 2) throw ArgumentError("co-occurrence window must be >= 2");
  if (options_.max_phrase_tokens < 1) throw ArgumentError("max_phrase_tokens must be >= 1");
}

std::unordered_map<std::string, double> GraphRankExtractor::token_scores(std::string_view text) const {
  std::vector<std::size_t> sequence;
  std::vector<std::string> nodes;
  std::unordered_map<std::string, std::size_t> ids;
  for (const auto& t : positioned_tokens(text)) {
    if (stoplist_.contains(t.text) || !has_alpha(t.text)) continue;
    auto [it, inserted] = ids.emplace(t.text, nodes.size());
    if (inserted) nodes.push_back(t.text);
    sequence.push_back(it->second);
  }

  const std::size_t n = nodes.size();
  std::vector<std::map<std::size_t, double>> edges(n);
  const auto window = static_cast<std::size_t>(options_.window);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    for (std::size_t j = i + 1; j < std::min(sequence.size(), i + window); ++j) {
      if (sequence[i] == sequence[j]) continue;
      edges[sequence[i]][sequence[j]] += 1.0;
      edges[sequence[j]][sequence[i]] += 1.0;
    }
  }
  std::vector<double> strength(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, w] : edges[i]) strength[i] += w;
  }

  const double d = options_.damping;
  std::vector<double> score(n, 1.0);
  std::vector<double> next(n);
  for (int iter = 0; iter < options_.max_iterations; ++iter) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (const auto& [j, w] : edges[i]) s += w / strength[j] * score[j];
      next[i] = (1.0 - d) + d * s;
      delta = std::max(delta, std::abs(next[i] - score[i]));
    }
    score.swap(next);
    if (delta < options_.tolerance) break;
  }

  std::unordered_map<std::string, double> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(nodes[i], score[i]);
  return out;
}

std::vector<Keyphrase> GraphRankExtractor::extract(std::string_view text, int k) const {
  if (k < 1) throw ArgumentError("k must be >= 1");
  const auto scores = token_scores(text);
  if (scores.empty()) return {};

  // Top third of the vocabulary, ties by token text.
  std::vector<std::pair<std::string, double>> ranked(scores.begin(), scores.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const std::size_t keep = std::max<std::size_t>(1, (ranked.size() + 2) / 3);
  std::unordered_map<std::string, double> top;
  for (std::size_t i = 0; i < keep; ++i) top.insert(ranked[i]);

  std::map<std::string, double> phrases;
  std::vector<std::string> run;
  double run_score = 0.0;
  auto flush = [&] {
    if (!run.empty()) {
      std::string phrase = run.front();
      for (std::size_t i = 1; i < run.size(); ++i) phrase += " " + run[i];
      phrases.emplace(std::move(phrase), run_score);
    }
    run.clear();
    run_score = 0.0;
  };
  for (const auto& t : positioned_tokens(text)) {
    auto it = top.find(t.text);
    if (it == top.end() || t.break_before) flush();
    if (it == top.end()) continue;
    if (run.size() == options_.max_phrase_tokens) flush();
    run.push_back(t.text);
    run_score += it->second;
  }
  flush();

  std::vector<Keyphrase> out;
  for (auto& [phrase, s] : phrases) out.push_back({phrase, s});
  std::sort(out.begin(), out.end(), [](const Keyphrase& a, const Keyphrase& b) {
    if (a.alpha != b.alpha) return a.alpha > b.alpha;
    return a.text < b.text;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  const double max_score = out.front().alpha;
  for (auto& kp : out) kp.alpha = max_score > 0.0 ? kp.alpha / max_score : 1.0;
  return out;
}

std::vector<Keyphrase> extract_keyphrases(std::string_view text, int k, const Stoplist& stoplist) {
  return GraphRankExtractor(stoplist).extract(text, k);
}

}  // namespace coursekit
