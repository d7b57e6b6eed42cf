#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coursekit/bloom.hpp"
#include "coursekit/chunkers.hpp"
#include "coursekit/embeddings.hpp"
#include "coursekit/ingest.hpp"
#include "coursekit/keyphrase.hpp"
#include "coursekit/random.hpp"

namespace fixtures {

std::filesystem::path data_path(const std::string& name);
std::filesystem::path stoplist_path();

const coursekit::EmbeddingTable& test_vectors();
const coursekit::Stoplist& stoplist();

// The two word-disjoint vocabularies of the bundled test table.
const std::vector<std::string>& bank_words();
const std::vector<std::string>& pharma_words();

// One line of 5-9 words drawn from `words`, with an occasional stopword.
std::string topic_line(coursekit::Rng& rng, const std::vector<std::string>& words);

// Fontless document: `first` bank lines followed by `second` pharma lines.
coursekit::Document two_topic_document(std::uint64_t seed, std::size_t first = 80,
                                       std::size_t second = 80);

// Formal document: a size-24 title line, then 3-20 sections, each opened by a
// size-18 heading of 2-5 words over a size-12 body. `starts` receives the true
// chunk starts (0 and every heading line).
coursekit::Document formal_document(std::uint64_t seed, std::vector<std::size_t>* starts = nullptr);

// Two Gaussian blobs per class with centres 10 sigma apart, 5 examples per chunk id.
std::vector<coursekit::Example> separable_examples(std::uint64_t seed, std::size_t n = 200,
                                                   std::size_t dim = 16, int classes = 2);

// A fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace fixtures
