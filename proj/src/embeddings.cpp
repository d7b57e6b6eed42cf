#include "coursekit/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "coursekit/error.hpp"
#include "coursekit/ingest.hpp"
#include "coursekit/kernels.hpp"

namespace coursekit {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

void check_same_length(const Vector& u, const Vector& v, const char* op) {
  if (u.size() != v.size()) {
    throw ArgumentError(std::string(op) + ": length mismatch " + std::to_string(u.size()) +
                        " vs " + std::to_string(v.size()));
  }
}

}  // namespace

bool Vector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

EmbeddingTable::EmbeddingTable(std::size_t dim, int vocab_limit)
    : dim_(dim), vocab_limit_(vocab_limit) {
  if (dim == 0) throw ArgumentError("embedding dim must be positive");
  if (vocab_limit <= 0) throw ArgumentError("vocab_limit must be positive");
}

bool EmbeddingTable::insert(std::string word, std::span<const double> values) {
  if (values.size() != dim_) throw ArgumentError("vector for '" + word + "' has wrong dimension");
  if (words_.size() >= static_cast<std::size_t>(vocab_limit_)) return false;
  if (index_.contains(word)) return false;
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dim_, dim_);
}

EmbeddingTable EmbeddingTable::parse(std::string_view content, int vocab_limit,
                                     const std::string& source) {
  if (vocab_limit <= 0) throw ArgumentError("vocab_limit must be positive");
  std::optional<EmbeddingTable> table;
  std::size_t header_dim = 0;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (line_no == 1 && fields.size() == 2) {
      long long count = 0;
      long long dim = 0;
      if (parse_number(fields[0], count) && parse_number(fields[1], dim)) {
        if (dim <= 0) throw FormatError(source, line_no, "header dimension must be positive");
        header_dim = static_cast<std::size_t>(dim);
        continue;
      }
    }
    if (fields.size() < 2) throw FormatError(source, line_no, "vector line has no components");
    const std::size_t arity = fields.size() - 1;
    if (!table) {
      if (header_dim != 0 && arity != header_dim) {
        throw FormatError(source, line_no,
                          "expected " + std::to_string(header_dim) + " components, found " +
                              std::to_string(arity));
      }
      table.emplace(arity, vocab_limit);
    } else if (arity != table->dim()) {
      throw FormatError(source, line_no,
                        "expected " + std::to_string(table->dim()) + " components, found " +
                            std::to_string(arity));
    }
    values.resize(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      if (!parse_number(fields[i + 1], values[i]) || !std::isfinite(values[i])) {
        throw FormatError(source, line_no, "bad component '" + std::string(fields[i + 1]) + "'");
      }
    }
    table->insert(std::string(fields[0]), values);
    if (table->size() >= static_cast<std::size_t>(vocab_limit)) break;
  }
  if (!table) throw FormatError(source, line_no, "no word vectors found");
  return std::move(*table);
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path, int vocab_limit) {
  return parse(read_file(path), vocab_limit, path.string());
}

Vector mean_bow(std::span<const std::string> tokens, const EmbeddingTable& table) {
  Vector sum(table.dim());
  std::size_t hits = 0;
  for (const auto& t : tokens) {
    if (auto v = table.find(t)) {
      kernels::add(*v, sum.span());
      ++hits;
    }
  }
  if (hits > 1) {
    const double n = static_cast<double>(hits);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] /= n;
  }
  return sum;
}

double cosine(const Vector& u, const Vector& v) {
  check_same_length(u, v, "cosine");
  const double nu = kernels::dot(u.span(), u.span());
  const double nv = kernels::dot(v.span(), v.span());
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double c = kernels::dot(u.span(), v.span()) / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(c, -1.0, 1.0);
}

Vector vector_add(const Vector& u, const Vector& v) {
  check_same_length(u, v, "vector_add");
  Vector out = u;
  kernels::add(v.span(), out.span());
  return out;
}

Vector vector_sub(const Vector& u, const Vector& v) {
  check_same_length(u, v, "vector_sub");
  Vector out = u;
  kernels::sub(v.span(), out.span());
  return out;
}

}  // namespace coursekit
