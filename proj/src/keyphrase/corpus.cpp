#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "coursekit/error.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

namespace {

template <class Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line, line_no);
  }
}

std::pair<std::string_view, std::string_view> split_tab(std::string_view line, const std::string& source,
                                                        std::size_t line_no) {
  const auto tab = line.rfind('\t');
  if (tab == std::string_view::npos) throw FormatError(source, line_no, "expected a tab-separated pair");
  return {line.substr(0, tab), line.substr(tab + 1)};
}

}  // namespace

std::string ngram_key(std::string_view phrase) {
  std::string key;
  for (const auto& t : tokenize(phrase)) {
    if (!key.empty()) key += ' ';
    key += t;
  }
  return key;
}

std::size_t count_subsequence(std::span<const std::string> haystack,
                              std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

BackgroundCorpus::BackgroundCorpus(std::size_t doc_count,
                                   std::unordered_map<std::string, std::size_t> df)
    : doc_count_(doc_count), df_(std::move(df)) {
  for (const auto& [g, n] : df_) {
    if (n > doc_count_) throw ArgumentError("df of '" + g + "' exceeds doc_count");
  }
}

BackgroundCorpus BackgroundCorpus::from_texts(std::span<const std::string> texts) {
  std::unordered_map<std::string, std::size_t> df;
  for (const auto& text : texts) {
    const auto tokens = tokenize(text);
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string gram;
      for (std::size_t n = 0; n < kMaxOrder && i + n < tokens.size(); ++n) {
        if (n > 0) gram += ' ';
        gram += tokens[i + n];
        seen.insert(gram);
      }
    }
    for (const auto& g : seen) ++df[g];
  }
  return BackgroundCorpus(texts.size(), std::move(df));
}

BackgroundCorpus BackgroundCorpus::parse_df(std::string_view content, const std::string& source) {
  std::optional<std::size_t> doc_count;
  std::unordered_map<std::string, std::size_t> df;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    auto [key, value] = split_tab(line, source, line_no);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw FormatError(source, line_no, "bad count '" + std::string(value) + "'");
    }
    if (!doc_count) {
      if (key != "doc_count") throw FormatError(source, line_no, "expected doc_count header");
      doc_count = n;
      return;
    }
    df[ngram_key(key)] = n;
  });
  if (!doc_count) throw FormatError(source, 1, "missing doc_count header");
  try {
    return BackgroundCorpus(*doc_count, std::move(df));
  } catch (const ArgumentError& e) {
    throw FormatError(source, 0, e.what());
  }
}

BackgroundCorpus BackgroundCorpus::load(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::string> texts;
    for (const auto& f : files) texts.push_back(read_file(f));
    return from_texts(texts);
  }
  return parse_df(read_file(path), path.string());
}

std::size_t BackgroundCorpus::df(const std::string& ngram) const {
  auto it = df_.find(ngram);
  return it == df_.end() ? 0 : it->second;
}

NgramTable::NgramTable(std::unordered_map<std::string, double> entries) : entries_(std::move(entries)) {}

NgramTable NgramTable::parse(std::string_view content, const std::string& source) {
  std::unordered_map<std::string, double> entries;
  for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    auto [key, value] = split_tab(line, source, line_no);
    double ll = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), ll);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(ll)) {
      throw FormatError(source, line_no, "bad log-likelihood '" + std::string(value) + "'");
    }
    entries[ngram_key(key)] = ll;
  });
  return NgramTable(std::move(entries));
}

NgramTable NgramTable::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

const double* NgramTable::find(const std::string& ngram) const {
  auto it = entries_.find(ngram);
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace coursekit
