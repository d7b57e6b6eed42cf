#include "coursekit/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coursekit/error.hpp"

namespace coursekit {

namespace {

using json = nlohmann::json;

constexpr std::string_view kStripChars = ",.:;\"'()";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string_view> split_physical_lines(std::string_view content) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

}  // namespace

Document::Document(std::string id, std::vector<DocumentLine> lines)
    : id_(std::move(id)), lines_(std::move(lines)) {
  has_fonts_ = !lines_.empty();
  int prev_page = 1;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    const DocumentLine& l = lines_[i];
    if (l.index != i) {
      throw ArgumentError("document " + id_ + ": line " + std::to_string(i) +
                          " has index " + std::to_string(l.index));
    }
    if (l.page < 1 || l.page < prev_page) {
      throw ArgumentError("document " + id_ + ": line " + std::to_string(i) +
                          " has invalid page " + std::to_string(l.page));
    }
    prev_page = l.page;
    if (l.font_size) {
      if (!(*l.font_size > 0.0)) {
        throw ArgumentError("document " + id_ + ": line " + std::to_string(i) +
                            " has non-positive font size");
      }
    } else {
      has_fonts_ = false;
    }
  }
}

std::string Document::text() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l.text;
    out += '\n';
  }
  return out;
}

Stoplist::Stoplist(std::unordered_set<std::string> words) {
  for (const auto& w : words) words_.insert(lowercase(w));
}

Stoplist Stoplist::load(const std::filesystem::path& path) {
  std::unordered_set<std::string> words;
  for (std::string_view line : split_physical_lines(read_file(path))) {
    std::size_t b = 0;
    std::size_t e = line.size();
    while (b < e && is_space(line[b])) ++b;
    while (e > b && is_space(line[e - 1])) --e;
    if (b < e) words.insert(lowercase(line.substr(b, e - b)));
  }
  return Stoplist(std::move(words));
}

bool Stoplist::contains(std::string_view token) const {
  return words_.find(std::string(token)) != words_.end();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path.string());
}

Document parse_lines(std::string_view content, std::string doc_id, const std::string& source) {
  std::vector<DocumentLine> lines;
  const auto physical = split_physical_lines(content);
  int prev_page = 1;
  for (std::size_t n = 0; n < physical.size(); ++n) {
    std::string_view raw = physical[n];
    if (std::all_of(raw.begin(), raw.end(), is_space)) continue;
    const std::size_t record_line = n + 1;
    json rec;
    try {
      rec = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(source, record_line, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(source, record_line, "record is not an object");
    for (const char* field : {"line", "page", "text"}) {
      if (!rec.contains(field)) {
        throw ParseError(source, record_line, std::string("missing field \"") + field + "\"");
      }
    }
    if (!rec["line"].is_number_integer()) throw ParseError(source, record_line, "\"line\" must be an integer");
    if (!rec["page"].is_number_integer()) throw ParseError(source, record_line, "\"page\" must be an integer");
    if (!rec["text"].is_string()) throw ParseError(source, record_line, "\"text\" must be a string");

    DocumentLine line;
    line.index = lines.size();
    const auto page = rec["page"].get<long long>();
    if (page < 1) throw ParseError(source, record_line, "page must be >= 1");
    if (page < prev_page) throw ParseError(source, record_line, "page numbers must not decrease");
    line.page = static_cast<int>(page);
    prev_page = line.page;
    line.text = rec["text"].get<std::string>();
    if (rec.contains("font_size") && !rec["font_size"].is_null()) {
      if (!rec["font_size"].is_number()) throw ParseError(source, record_line, "\"font_size\" must be a number");
      const double fs = rec["font_size"].get<double>();
      if (!(fs > 0.0)) throw ParseError(source, record_line, "font_size must be positive");
      line.font_size = fs;
    }
    lines.push_back(std::move(line));
  }
  if (lines.empty()) throw EmptyDocumentError(source + ": document has no lines");
  return Document(std::move(doc_id), std::move(lines));
}

Document load_lines(const std::filesystem::path& path) {
  return parse_lines(read_file(path), path.stem().string(), path.string());
}

std::string format_lines(const Document& doc) {
  std::string out;
  for (const auto& l : doc.lines()) {
    json rec;
    rec["line"] = l.index;
    rec["page"] = l.page;
    rec["text"] = l.text;
    if (l.font_size) rec["font_size"] = *l.font_size;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_lines(const Document& doc, const std::filesystem::path& path) {
  write_file(path, format_lines(doc));
}

Document parse_plain_text(std::string_view content, std::string doc_id, int page_lines) {
  if (page_lines < 1) throw ArgumentError("page_lines must be >= 1");
  if (content.empty()) throw EmptyDocumentError("document " + doc_id + " is empty");
  std::vector<DocumentLine> lines;
  for (std::string_view raw : split_physical_lines(content)) {
    DocumentLine line;
    line.index = lines.size();
    line.page = 1 + static_cast<int>(line.index / static_cast<std::size_t>(page_lines));
    line.text = std::string(raw);
    lines.push_back(std::move(line));
  }
  return Document(std::move(doc_id), std::move(lines));
}

Document load_plain_text(const std::filesystem::path& path, int page_lines) {
  return parse_plain_text(read_file(path), path.stem().string(), page_lines);
}

Document load_document(const std::filesystem::path& path, int page_lines) {
  if (path.extension() == ".jsonl") return load_lines(path);
  return load_plain_text(path, page_lines);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::string_view word = text.substr(i, j - i);
    while (!word.empty() && kStripChars.find(word.front()) != std::string_view::npos) word.remove_prefix(1);
    while (!word.empty() && kStripChars.find(word.back()) != std::string_view::npos) word.remove_suffix(1);
    if (!word.empty()) out.push_back(lowercase(word));
    i = j;
  }
  return out;
}

std::vector<std::string> content_tokens(std::string_view text, const Stoplist& stoplist) {
  auto tokens = tokenize(text);
  std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
  return tokens;
}

}  // namespace coursekit
