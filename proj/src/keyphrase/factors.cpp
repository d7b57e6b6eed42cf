#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "coursekit/error.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

WeightVector::WeightVector(std::array<double, kFactorCount> w) : w_(w) {
  double sum = 0.0;
  for (double x : w_) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ArgumentError("factor weights must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ArgumentError("factor weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

WeightVector parse_weights(std::string_view text) {
  if (text == "bank") return WeightVector::bank();
  if (text == "pharma") return WeightVector::pharma();
  std::array<double, kFactorCount> w{};
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (n >= kFactorCount) throw ArgumentError("expected 5 comma-separated weights");
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w[n]);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw ArgumentError("bad weight '" + std::string(field) + "'");
    }
    ++n;
    pos = comma + 1;
  }
  if (n != kFactorCount) throw ArgumentError("expected 5 comma-separated weights");
  return WeightVector(w);
}

std::string format_weights(const WeightVector& w) {
  std::string out;
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w[i]);
    (void)ec;
    if (i) out += ',';
    out.append(buf, ptr);
  }
  return out;
}

std::vector<double> normalize_min_max(std::span<const double> raw) {
  if (raw.empty()) return {};
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out;
  out.reserve(raw.size());
  for (double x : raw) out.push_back(range > 0.0 ? (x - min) / range : 1.0);
  return out;
}

double beta_raw(const Keyphrase& kp, std::span<const std::string> chunk_tokens,
                const BackgroundCorpus& bg) {
  if (bg.doc_count() < 1) throw ArgumentError("background corpus has no documents");
  const auto tokens = tokenize(kp.text);
  const auto tf = static_cast<double>(count_subsequence(chunk_tokens, tokens));
  if (tf == 0.0) return 0.0;
  const double idf = std::log(static_cast<double>(bg.doc_count()) /
                              (1.0 + static_cast<double>(bg.df(ngram_key(kp.text)))));
  return std::max(0.0, tf * idf);
}

std::vector<double> beta_tfidf(std::span<const Keyphrase> candidates, std::string_view chunk_text,
                               const BackgroundCorpus& bg) {
  const auto tokens = tokenize(chunk_text);
  std::vector<double> raw;
  raw.reserve(candidates.size());
  for (const auto& kp : candidates) raw.push_back(beta_raw(kp, tokens, bg));
  return normalize_min_max(raw);
}

double gamma_raw(const Keyphrase& kp, std::span<const std::vector<std::string>> sibling_tokens) {
  const auto tokens = tokenize(kp.text);
  std::size_t containing = 0;
  for (const auto& s : sibling_tokens) {
    if (count_subsequence(s, tokens) > 0) ++containing;
  }
  const double chunks = static_cast<double>(sibling_tokens.size() + 1);
  return std::log(chunks / (1.0 + static_cast<double>(containing)));
}

std::vector<double> gamma_icf(std::span<const Keyphrase> candidates,
                              std::span<const std::string> sibling_chunks) {
  if (sibling_chunks.empty()) return std::vector<double>(candidates.size(), 0.0);
  std::vector<std::vector<std::string>> sibling_tokens;
  sibling_tokens.reserve(sibling_chunks.size());
  for (const auto& s : sibling_chunks) sibling_tokens.push_back(tokenize(s));
  std::vector<double> raw;
  raw.reserve(candidates.size());
  for (const auto& kp : candidates) raw.push_back(gamma_raw(kp, sibling_tokens));
  return normalize_min_max(raw);
}

std::vector<double> phi_ngram(std::span<const Keyphrase> candidates, const NgramTable& table) {
  const std::size_t k = candidates.size();
  std::vector<const double*> ll(k);
  for (std::size_t i = 0; i < k; ++i) ll[i] = table.find(ngram_key(candidates[i].text));
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if ((ll[a] != nullptr) != (ll[b] != nullptr)) return ll[a] != nullptr;
    if (ll[a] && *ll[a] != *ll[b]) return *ll[a] > *ll[b];
    return candidates[a].text < candidates[b].text;
  });
  std::vector<double> phi(k, 1.0);
  if (k > 1) {
    for (std::size_t rank = 0; rank < k; ++rank) {
      phi[order[rank]] = 1.0 - static_cast<double>(rank) / static_cast<double>(k - 1);
    }
  }
  return phi;
}

double theta_title_overlap(const Keyphrase& kp, std::span<const std::string> section_titles,
                           const Stoplist& stoplist) {
  const auto kp_tokens = content_tokens(kp.text, stoplist);
  const std::set<std::string> kp_set(kp_tokens.begin(), kp_tokens.end());
  if (kp_set.empty() || section_titles.empty()) return 0.0;
  std::set<std::string> title_set;
  for (const auto& t : section_titles) {
    for (auto& tok : content_tokens(t, stoplist)) title_set.insert(std::move(tok));
  }
  std::size_t hits = 0;
  for (const auto& t : kp_set) hits += title_set.count(t);
  return static_cast<double>(hits) / static_cast<double>(kp_set.size());
}

double combined_score(const FactorScores& f, const WeightVector& w) {
  const auto v = f.as_array();
  double s = 0.0;
  for (std::size_t i = 0; i < kFactorCount; ++i) s += w[i] * v[i];
  return s;
}

}  // namespace coursekit
