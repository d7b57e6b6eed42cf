#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coursekit {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : values_(dim, 0.0) {}
  explicit Vector(std::vector<double> values) : values_(std::move(values)) {}
  Vector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> span() const noexcept { return values_; }
  std::span<double> span() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool is_zero() const;

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> values_;
};

inline constexpr int kDefaultVocabLimit = 1000;

// Frequency-ordered pre-trained word vectors, stored contiguously.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dim, int vocab_limit);

  static EmbeddingTable load(const std::filesystem::path& path,
                             int vocab_limit = kDefaultVocabLimit);
  static EmbeddingTable parse(std::string_view content, int vocab_limit = kDefaultVocabLimit,
                              const std::string& source = "<memory>");

  // Returns false (and stores nothing) once vocab_limit entries are held or
  // the word is already present.
  bool insert(std::string word, std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  int vocab_limit() const noexcept { return vocab_limit_; }

  std::optional<std::span<const double>> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }
  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  std::size_t dim_;
  int vocab_limit_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

Vector mean_bow(std::span<const std::string> tokens, const EmbeddingTable& table);
double cosine(const Vector& u, const Vector& v);
Vector vector_add(const Vector& u, const Vector& v);
Vector vector_sub(const Vector& u, const Vector& v);

}  // namespace coursekit
