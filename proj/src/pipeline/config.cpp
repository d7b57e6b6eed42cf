#include <charconv>
#include <cstdio>

#include "coursekit/error.hpp"
#include "coursekit/pipeline.hpp"

namespace coursekit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_value(std::string_view key, std::string_view value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ArgumentError("config key '" + std::string(key) + "': bad value '" + std::string(value) + "'");
  }
  return v;
}

IntRange parse_range(std::string_view key, std::string_view value) {
  const auto comma = value.find(',');
  if (comma == std::string_view::npos) {
    throw ArgumentError("config key '" + std::string(key) + "' expects 'min,max'");
  }
  return {parse_value<int>(key, trim(value.substr(0, comma))),
          parse_value<int>(key, trim(value.substr(comma + 1)))};
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ArgumentError("config key '" + std::string(key) + "' expects true/false");
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

void apply_config_entry(PipelineConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "method") cfg.method = parse_chunk_method(value);
  else if (key == "font_group_lines") cfg.syntactic.font_group_lines = parse_range(key, value);
  else if (key == "n_chunks") cfg.syntactic.n_chunks = parse_range(key, value);
  else if (key == "min_section_title_length") cfg.syntactic.min_section_title_length = parse_value<int>(key, value);
  else if (key == "min_par_to_stop") cfg.semantic.min_par_to_stop = parse_value<int>(key, value);
  else if (key == "trim_par") cfg.semantic.trim_par = parse_value<int>(key, value);
  else if (key == "embeddings") cfg.embeddings = std::string(value);
  else if (key == "vocab_limit") cfg.vocab_limit = parse_value<int>(key, value);
  else if (key == "stoplist") cfg.stoplist = std::string(value);
  else if (key == "weights") {
    if (value == "tune") cfg.weights.reset();
    else cfg.weights = parse_weights(value);
  }
  else if (key == "annotations") cfg.annotations = std::string(value);
  else if (key == "tune_step") cfg.tune_step = parse_value<double>(key, value);
  else if (key == "top_k") cfg.top_k = parse_value<int>(key, value);
  else if (key == "candidate_pool") cfg.candidate_pool = parse_value<int>(key, value);
  else if (key == "model") cfg.model = std::string(value);
  else if (key == "background") cfg.background = std::string(value);
  else if (key == "ngrams") cfg.ngrams = std::string(value);
  else if (key == "out") cfg.out = std::string(value);
  else if (key == "page_lines") cfg.page_lines = parse_value<int>(key, value);
  else if (key == "no_chunk") cfg.no_chunk = parse_bool(key, value);
  else if (key == "jobs") cfg.jobs = parse_value<unsigned>(key, value);
  else if (key == "seed") cfg.seed = parse_value<std::uint64_t>(key, value);
  else throw ArgumentError("unknown config key '" + std::string(key) + "'");
}

PipelineConfig parse_config(std::string_view content, const std::string& source) {
  PipelineConfig cfg;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected 'key = value'");
    try {
      apply_config_entry(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ArgumentError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.string());
}

void PipelineConfig::validate() const {
  syntactic.validate();
  semantic.validate();
  if (top_k < 1) throw ArgumentError("top_k must be >= 1");
  if (candidate_pool < 1) throw ArgumentError("candidate_pool must be >= 1");
  if (vocab_limit < 1) throw ArgumentError("vocab_limit must be >= 1");
  if (page_lines < 1) throw ArgumentError("page_lines must be >= 1");
  if (embeddings.empty()) throw ArgumentError("no embeddings file configured");
  if (!weights && annotations.empty()) throw ArgumentError("weights = tune needs an annotations file");
  for (const auto* p : {&embeddings, &stoplist, &annotations, &model, &background, &ngrams}) {
    if (!p->empty() && !std::filesystem::exists(*p)) {
      throw ArgumentError("configured file does not exist: " + p->string());
    }
  }
}

std::string PipelineConfig::params_hash() const {
  std::string canon;
  canon += "method=" + std::string(to_string(method));
  canon += ";font_group_lines=" + std::to_string(syntactic.font_group_lines.min) + "," +
           std::to_string(syntactic.font_group_lines.max);
  canon += ";n_chunks=" + std::to_string(syntactic.n_chunks.min) + "," + std::to_string(syntactic.n_chunks.max);
  canon += ";min_section_title_length=" + std::to_string(syntactic.min_section_title_length);
  canon += ";min_par_to_stop=" + std::to_string(semantic.min_par_to_stop);
  canon += ";trim_par=" + std::to_string(semantic.trim_par);
  canon += ";vocab_limit=" + std::to_string(vocab_limit);
  canon += ";page_lines=" + std::to_string(page_lines);
  canon += ";no_chunk=" + std::string(no_chunk ? "true" : "false");
  canon += ";weights=" + (weights ? format_weights(*weights) : std::string("tune"));
  canon += ";top_k=" + std::to_string(top_k);
  canon += ";candidate_pool=" + std::to_string(candidate_pool);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
  return buf;
}

}  // namespace coursekit
