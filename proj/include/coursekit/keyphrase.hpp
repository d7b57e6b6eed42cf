#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coursekit/ingest.hpp"

namespace coursekit {

struct Keyphrase {
  std::string text;
  double alpha = 0.0;  // extractor score, max-normalized to 1 within a chunk

  bool operator==(const Keyphrase&) const = default;
};

// Pluggable candidate source. An external keyphrase service can be wrapped
// behind this interface.
class KeyphraseExtractor {
 public:
  virtual ~KeyphraseExtractor() = default;
  virtual std::vector<Keyphrase> extract(std::string_view text, int k) const = 0;
};

struct GraphRankOptions {
  int window = 2;
  double damping = 0.85;
  int max_iterations = 50;
  double tolerance = 1e-6;
  std::size_t max_phrase_tokens = 4;
};

// Co-occurrence graph ranking over content tokens. Top-ranked tokens that are
// adjacent in the text are merged into phrases scored by member-score sum.
class GraphRankExtractor final : public KeyphraseExtractor {
 public:
  explicit GraphRankExtractor(Stoplist stoplist, GraphRankOptions options = {});

  std::vector<Keyphrase> extract(std::string_view text, int k) const override;

  // Token centrality scores, keyed by token. Exposed for tests.
  std::unordered_map<std::string, double> token_scores(std::string_view text) const;

 private:
  Stoplist stoplist_;
  GraphRankOptions options_;
};

std::vector<Keyphrase> extract_keyphrases(std::string_view text, int k, const Stoplist& stoplist);

enum class Factor : std::size_t { Alpha = 0, Beta, Gamma, Phi, Theta };
inline constexpr std::size_t kFactorCount = 5;

struct FactorScores {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
  double theta = 0.0;

  std::array<double, kFactorCount> as_array() const { return {alpha, beta, gamma, phi, theta}; }
  bool operator==(const FactorScores&) const = default;
};

// Non-negative factor weights on the unit simplex, in (alpha, beta, gamma, phi, theta) order.
class WeightVector {
 public:
  WeightVector() = default;
  // Throws ArgumentError unless all weights are >= 0 and sum to 1 within 1e-9.
  explicit WeightVector(std::array<double, kFactorCount> w);

  static WeightVector bank() { return WeightVector({0.0, 0.5, 0.0, 0.5, 0.0}); }
  static WeightVector pharma() { return WeightVector({0.26, 0.32, 0.0, 0.32, 0.1}); }
  static WeightVector uniform() { return WeightVector({0.2, 0.2, 0.2, 0.2, 0.2}); }

  double operator[](std::size_t i) const { return w_[i]; }
  const std::array<double, kFactorCount>& values() const noexcept { return w_; }

  bool operator==(const WeightVector&) const = default;

 private:
  std::array<double, kFactorCount> w_{0.2, 0.2, 0.2, 0.2, 0.2};
};

WeightVector parse_weights(std::string_view text);
std::string format_weights(const WeightVector& w);

// Document frequencies of 1- to 4-grams over a background collection.
class BackgroundCorpus {
 public:
  static constexpr std::size_t kMaxOrder = 4;

  BackgroundCorpus() = default;
  BackgroundCorpus(std::size_t doc_count, std::unordered_map<std::string, std::size_t> df);

  static BackgroundCorpus from_texts(std::span<const std::string> texts);
  // A directory of plain-text documents, or a df file ("doc_count<TAB>N" header
  // followed by "ngram<TAB>df" lines).
  static BackgroundCorpus load(const std::filesystem::path& path);
  static BackgroundCorpus parse_df(std::string_view content, const std::string& source = "<memory>");

  std::size_t doc_count() const noexcept { return doc_count_; }
  std::size_t df(const std::string& ngram) const;

 private:
  std::size_t doc_count_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
};

// Offline n-gram log-likelihoods ("ngram<TAB>log_likelihood").
class NgramTable {
 public:
  NgramTable() = default;
  explicit NgramTable(std::unordered_map<std::string, double> entries);

  static NgramTable load(const std::filesystem::path& path);
  static NgramTable parse(std::string_view content, const std::string& source = "<memory>");

  const double* find(const std::string& ngram) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
};

// Canonical n-gram key for a phrase: its tokens joined by single spaces.
std::string ngram_key(std::string_view phrase);

// Occurrences of needle as a contiguous run inside haystack.
std::size_t count_subsequence(std::span<const std::string> haystack,
                              std::span<const std::string> needle);

// Maps raw values to [0,1] by min-max; a constant input maps to all 1.0.
std::vector<double> normalize_min_max(std::span<const double> raw);

double beta_raw(const Keyphrase& kp, std::span<const std::string> chunk_tokens,
                const BackgroundCorpus& bg);
std::vector<double> beta_tfidf(std::span<const Keyphrase> candidates, std::string_view chunk_text,
                               const BackgroundCorpus& bg);

double gamma_raw(const Keyphrase& kp, std::span<const std::vector<std::string>> sibling_tokens);
std::vector<double> gamma_icf(std::span<const Keyphrase> candidates,
                              std::span<const std::string> sibling_chunks);

std::vector<double> phi_ngram(std::span<const Keyphrase> candidates, const NgramTable& table);

double theta_title_overlap(const Keyphrase& kp, std::span<const std::string> section_titles,
                           const Stoplist& stoplist);

double combined_score(const FactorScores& f, const WeightVector& w);

struct ScoredKeyphrase {
  Keyphrase keyphrase;
  FactorScores factors;
  double score = 0.0;
};

struct RankingContext {
  std::string_view chunk_text;
  std::span<const std::string> sibling_chunks;
  std::span<const std::string> section_titles;
  const BackgroundCorpus* background = nullptr;
  const NgramTable* ngrams = nullptr;
  const Stoplist* stoplist = nullptr;
  const KeyphraseExtractor* extractor = nullptr;  // GraphRankExtractor when null
  int candidate_pool = 10;
};

// All five factors for a fixed candidate set.
std::vector<FactorScores> compute_factors(std::span<const Keyphrase> candidates,
                                          const RankingContext& ctx);

// Scores with the weights and sorts by score desc, then alpha desc, then text asc.
std::vector<ScoredKeyphrase> order_by_score(std::vector<ScoredKeyphrase> scored,
                                            const WeightVector& w);

std::vector<ScoredKeyphrase> rank_keyphrases(const RankingContext& ctx, const WeightVector& w,
                                             int k);

// Grid-search input: one chunk's annotated candidates with precomputed factors.
struct TuningCandidate {
  std::string text;
  FactorScores factors;
  double rating = 1.0;  // mean annotator rating
};

struct TuningChunk {
  std::string chunk_id;
  std::vector<TuningCandidate> candidates;
};

// Mean over chunks of the mean rating of each chunk's top-k under w.
double tuning_objective(std::span<const TuningChunk> chunks, const WeightVector& w, int k);

// All weight vectors whose components are multiples of step, in ascending
// lexicographic (alpha, beta, gamma, phi, theta) order.
std::vector<WeightVector> simplex_lattice(double step);

struct GridSearchResult {
  WeightVector weights;
  double objective = 0.0;
  std::size_t evaluated = 0;
};

GridSearchResult grid_search_weights(std::span<const TuningChunk> chunks, int k, double step = 0.05,
                                     unsigned jobs = 1);

}  // namespace coursekit
