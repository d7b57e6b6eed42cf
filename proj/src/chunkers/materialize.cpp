#include <system_error>

#include <json.hpp>

#include "coursekit/chunkers.hpp"
#include "coursekit/error.hpp"

namespace coursekit {

namespace {

using json = nlohmann::json;

void check_boundaries(const Document& doc, const ChunkBoundaries& b) {
  if (b.line_starts.empty() || b.line_starts.front() != 0) {
    throw ArgumentError("boundaries for " + doc.id() + " must start at line 0");
  }
  for (std::size_t i = 1; i < b.line_starts.size(); ++i) {
    if (b.line_starts[i] <= b.line_starts[i - 1]) {
      throw ArgumentError("boundaries for " + doc.id() + " are not strictly increasing");
    }
  }
  if (b.line_starts.back() >= doc.size()) {
    throw ArgumentError("boundary beyond the end of " + doc.id());
  }
}

}  // namespace

std::vector<Chunk> split_chunks(const Document& doc, const ChunkBoundaries& b) {
  check_boundaries(doc, b);
  std::vector<Chunk> chunks;
  chunks.reserve(b.line_starts.size());
  for (std::size_t i = 0; i < b.line_starts.size(); ++i) {
    Chunk c;
    c.doc_id = doc.id();
    c.ordinal = i;
    c.start_line = b.line_starts[i];
    c.end_line = (i + 1 < b.line_starts.size() ? b.line_starts[i + 1] : doc.size()) - 1;
    c.start_page = doc.page_of(c.start_line);
    for (std::size_t l = c.start_line; l <= c.end_line; ++l) {
      c.text += doc.lines()[l].text;
      c.text += '\n';
    }
    chunks.push_back(std::move(c));
  }
  return chunks;
}

std::vector<std::string> chunk_titles(const Document& doc, const ChunkBoundaries& b) {
  std::vector<std::string> titles;
  for (std::size_t s : b.line_starts) titles.push_back(doc.lines().at(s).text);
  return titles;
}

ChunkManifest materialize_chunks(const Document& doc, const ChunkBoundaries& b,
                                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  ChunkManifest manifest;
  for (const auto& c : split_chunks(doc, b)) {
    const std::string file = c.id() + ".txt";
    write_file(out_dir / file, c.text);
    manifest.push_back({c.doc_id, c.ordinal, c.start_line, c.end_line, c.start_page, file});
  }
  write_file(out_dir / (doc.id() + ".manifest.jsonl"), format_manifest(manifest));
  return manifest;
}

std::string format_manifest(const ChunkManifest& manifest) {
  std::string out;
  for (const auto& r : manifest) {
    json rec;
    rec["doc_id"] = r.doc_id;
    rec["ordinal"] = r.ordinal;
    rec["start_line"] = r.start_line;
    rec["end_line"] = r.end_line;
    rec["start_page"] = r.start_page;
    rec["file"] = r.file;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

ChunkManifest parse_manifest(std::string_view content, const std::string& source) {
  ChunkManifest out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json rec = json::parse(line);
      out.push_back({rec.at("doc_id").get<std::string>(), rec.at("ordinal").get<std::size_t>(),
                     rec.at("start_line").get<std::size_t>(), rec.at("end_line").get<std::size_t>(),
                     rec.at("start_page").get<int>(), rec.at("file").get<std::string>()});
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, std::string("bad manifest record: ") + e.what());
    }
  }
  return out;
}

}  // namespace coursekit
