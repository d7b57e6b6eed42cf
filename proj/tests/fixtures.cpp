#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

using namespace coursekit;

namespace fixtures {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(COURSEKIT_TEST_DATA) / name;
}

std::filesystem::path stoplist_path() {
  return std::filesystem::path(COURSEKIT_DATA_DIR) / "stoplist_en.txt";
}

const EmbeddingTable& test_vectors() {
  static const EmbeddingTable table = EmbeddingTable::load(data_path("test_vectors.txt"));
  return table;
}

const Stoplist& stoplist() {
  static const Stoplist s = Stoplist::load(stoplist_path());
  return s;
}

const std::vector<std::string>& bank_words() {
  static const std::vector<std::string> words = {
      "ach",      "payments", "payment",  "bank",       "banks",      "transaction",
      "transactions", "clearing", "transfer", "credit",     "deposit",    "account",
      "accounts", "consumer", "network",  "electronic", "giro",       "settlement",
      "interbank", "wire",    "funds",    "check"};
  return words;
}

const std::vector<std::string>& pharma_words() {
  static const std::vector<std::string> words = {
      "drug",    "dose",         "dosage",   "clinical", "trial",     "patient",
      "patients", "compound",    "tablet",   "molecule", "therapy",   "pharmacy",
      "prescription", "enzyme",  "protein",  "toxicity", "formulation", "vaccine",
      "placebo", "chemical",     "trials",   "label"};
  return words;
}

std::string topic_line(Rng& rng, const std::vector<std::string>& words) {
  static const std::vector<std::string> fillers = {"the", "of", "and", "with", "for", "in"};
  const std::size_t n = 5 + rng.index(5);
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!line.empty()) line += ' ';
    if (i > 0 && rng.uniform() < 0.2) {
      line += fillers[rng.index(fillers.size())];
      line += ' ';
    }
    line += words[rng.index(words.size())];
  }
  return line;
}

Document two_topic_document(std::uint64_t seed, std::size_t first, std::size_t second) {
  Rng rng(seed);
  std::vector<DocumentLine> lines;
  for (std::size_t i = 0; i < first + second; ++i) {
    DocumentLine l;
    l.index = i;
    l.page = 1 + static_cast<int>(i / kDefaultPageLines);
    l.text = topic_line(rng, i < first ? bank_words() : pharma_words());
    lines.push_back(std::move(l));
  }
  return Document("topics" + std::to_string(seed), std::move(lines));
}

Document formal_document(std::uint64_t seed, std::vector<std::size_t>* starts) {
  static const std::vector<std::string> heading_words = {
      "overview", "scope",    "clearing", "returns",  "settlement", "exceptions",
      "timing",   "controls", "reporting", "glossary", "dosage",     "storage"};
  static const std::vector<std::string> body_words = {
      "the",    "process", "requires", "each",   "participant", "to",    "submit",
      "files",  "before",  "the",      "cutoff", "window",      "and",   "review",
      "status", "reports", "daily",    "for",    "errors",      "rules", "apply"};
  Rng rng(seed);
  const std::size_t sections = 3 + rng.index(18);
  std::vector<DocumentLine> lines;
  std::vector<std::size_t> truth{0};
  auto push = [&](std::string text, double size) {
    DocumentLine l;
    l.index = lines.size();
    l.page = 1 + static_cast<int>(lines.size() / kDefaultPageLines);
    l.text = std::move(text);
    l.font_size = size;
    lines.push_back(std::move(l));
  };
  push("Operating Guide " + std::to_string(seed), 24.0);
  for (std::size_t s = 0; s < sections; ++s) {
    truth.push_back(lines.size());
    std::string heading = std::to_string(s + 1) + ".";
    const std::size_t words = 2 + rng.index(4);
    for (std::size_t w = 0; w < words; ++w) heading += " " + heading_words[rng.index(heading_words.size())];
    push(heading, 18.0);
    const std::size_t body = 4 + rng.index(20);
    for (std::size_t b = 0; b < body; ++b) {
      std::string text;
      const std::size_t n = 6 + rng.index(8);
      for (std::size_t w = 0; w < n; ++w) {
        if (w) text += ' ';
        text += body_words[rng.index(body_words.size())];
      }
      push(text, 12.0);
    }
  }
  if (starts) *starts = truth;
  return Document("formal" + std::to_string(seed), std::move(lines));
}

std::vector<Example> separable_examples(std::uint64_t seed, std::size_t n, std::size_t dim, int classes) {
  Rng rng(seed);
  std::vector<Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    Example e;
    e.label = static_cast<int>(i % static_cast<std::size_t>(classes));
    e.features.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) e.features[d] = rng.normal();
    // Centres sit 10 sigma apart along the first coordinate.
    e.features[0] += 10.0 * e.label;
    e.chunk_id = "blobs." + std::to_string(i / 5);
    out.push_back(std::move(e));
  }
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("coursekit_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
