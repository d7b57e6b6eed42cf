#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace coursekit {

struct DocumentLine {
  std::size_t index = 0;
  int page = 1;
  std::string text;
  std::optional<double> font_size;

  bool operator==(const DocumentLine&) const = default;
};

// An ordered list of line records. Construction validates the record
// invariants (consecutive indices, pages >= 1 and non-decreasing, positive
// font sizes) and derives has_fonts.
class Document {
 public:
  Document(std::string id, std::vector<DocumentLine> lines);

  const std::string& id() const noexcept { return id_; }
  const std::vector<DocumentLine>& lines() const noexcept { return lines_; }
  std::size_t size() const noexcept { return lines_.size(); }
  bool empty() const noexcept { return lines_.empty(); }
  bool has_fonts() const noexcept { return has_fonts_; }

  int page_of(std::size_t line) const { return lines_.at(line).page; }

  // Every line followed by '\n'.
  std::string text() const;

  bool operator==(const Document&) const = default;

 private:
  std::string id_;
  std::vector<DocumentLine> lines_;
  bool has_fonts_ = false;
};

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::unordered_set<std::string> words);

  static Stoplist load(const std::filesystem::path& path);

  // Expects an already-lowercased token.
  bool contains(std::string_view token) const;
  std::size_t size() const noexcept { return words_.size(); }
  const std::unordered_set<std::string>& words() const noexcept { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

// Line-record file: one JSON object per line with fields
// {line, page, text, font_size?}. Records are re-indexed in file order.
Document load_lines(const std::filesystem::path& path);
Document parse_lines(std::string_view content, std::string doc_id,
                     const std::string& source = "<memory>");
void write_lines(const Document& doc, const std::filesystem::path& path);
std::string format_lines(const Document& doc);

inline constexpr int kDefaultPageLines = 40;

Document load_plain_text(const std::filesystem::path& path, int page_lines = kDefaultPageLines);
Document parse_plain_text(std::string_view content, std::string doc_id,
                          int page_lines = kDefaultPageLines);

// Dispatches on extension: ".jsonl" is a line-record file, anything else plain text.
Document load_document(const std::filesystem::path& path, int page_lines = kDefaultPageLines);

std::vector<std::string> tokenize(std::string_view text);
std::vector<std::string> content_tokens(std::string_view text, const Stoplist& stoplist);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace coursekit
