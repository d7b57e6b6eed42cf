#include <charconv>
#include <cmath>

#include "coursekit/bloom.hpp"
#include "coursekit/error.hpp"
#include "coursekit/ingest.hpp"

namespace coursekit {

namespace {

constexpr std::string_view kMagic = "coursekit-mlp";
constexpr int kFormatVersion = 1;

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  out.append(buf, ptr);
}

void append_row(std::string& out, const double* row, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    append_number(out, row[i]);
  }
  out += '\n';
}

class Reader {
 public:
  Reader(std::string_view content, const std::string& source) : content_(content), source_(source) {}

  std::vector<std::string_view> next_line() {
    while (pos_ < content_.size()) {
      std::size_t nl = content_.find('\n', pos_);
      if (nl == std::string_view::npos) nl = content_.size();
      std::string_view line = content_.substr(pos_, nl - pos_);
      pos_ = nl + 1;
      ++line_no_;
      std::vector<std::string_view> fields;
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\r') ++j;
        if (j > i) fields.push_back(line.substr(i, j - i));
        i = j;
      }
      if (!fields.empty()) return fields;
    }
    fail("unexpected end of model file");
  }

  template <class T>
  T number(std::string_view s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
    return v;
  }

  template <class T>
  T keyed(std::string_view key) {
    auto f = next_line();
    if (f.size() != 2 || f[0] != key) fail("expected '" + std::string(key) + " <value>'");
    return number<T>(f[1]);
  }

  void row(double* out, std::size_t n) {
    auto f = next_line();
    if (f.size() != n) fail("expected " + std::to_string(n) + " values, found " + std::to_string(f.size()));
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = number<double>(f[i]);
      if (!std::isfinite(out[i])) fail("non-finite parameter");
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(source_, line_no_, what); }

 private:
  std::string_view content_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace

std::string serialize_model(const MlpModel& m) {
  std::string out;
  out += std::string(kMagic) + " " + std::to_string(kFormatVersion) + "\n";
  out += "classes " + std::to_string(m.classes) + "\n";
  out += "input_dim " + std::to_string(m.input_dim) + "\n";
  out += "h1 " + std::to_string(m.h1) + "\n";
  out += "h2 " + std::to_string(m.h2) + "\n";
  out += "seed " + std::to_string(m.seed) + "\n";
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    const auto& layer = m.layers[l];
    out += "layer " + std::to_string(l) + " " + std::to_string(layer.outputs) + " " +
           std::to_string(layer.inputs) + "\n";
    for (std::size_t r = 0; r < layer.outputs; ++r) {
      append_row(out, layer.weights.data() + r * layer.inputs, layer.inputs);
    }
    append_row(out, layer.bias.data(), layer.outputs);
  }
  return out;
}

MlpModel deserialize_model(std::string_view content, const std::string& source) {
  Reader in(content, source);
  auto header = in.next_line();
  if (header.size() != 2 || header[0] != kMagic) in.fail("not a coursekit model file");
  if (in.number<int>(header[1]) != kFormatVersion) in.fail("unsupported model format version");

  const int classes = in.keyed<int>("classes");
  const auto input_dim = in.keyed<std::size_t>("input_dim");
  const auto h1 = in.keyed<std::size_t>("h1");
  const auto h2 = in.keyed<std::size_t>("h2");
  const auto seed = in.keyed<std::uint64_t>("seed");
  if (classes < 2 || input_dim == 0 || h1 == 0 || h2 == 0) in.fail("invalid model shape");

  MlpModel m;
  m.classes = classes;
  m.input_dim = input_dim;
  m.h1 = h1;
  m.h2 = h2;
  m.seed = seed;
  const std::size_t shapes[3][2] = {{h1, input_dim}, {h2, h1}, {static_cast<std::size_t>(classes), h2}};
  for (std::size_t l = 0; l < 3; ++l) {
    auto f = in.next_line();
    if (f.size() != 4 || f[0] != "layer" || in.number<std::size_t>(f[1]) != l ||
        in.number<std::size_t>(f[2]) != shapes[l][0] || in.number<std::size_t>(f[3]) != shapes[l][1]) {
      in.fail("bad layer header for layer " + std::to_string(l));
    }
    DenseLayer& layer = m.layers[l];
    layer.outputs = shapes[l][0];
    layer.inputs = shapes[l][1];
    layer.weights.resize(layer.outputs * layer.inputs);
    layer.bias.resize(layer.outputs);
    for (std::size_t r = 0; r < layer.outputs; ++r) in.row(layer.weights.data() + r * layer.inputs, layer.inputs);
    in.row(layer.bias.data(), layer.outputs);
  }
  return m;
}

void save_model(const MlpModel& m, const std::filesystem::path& path) {
  write_file(path, serialize_model(m));
}

MlpModel load_model(const std::filesystem::path& path) {
  return deserialize_model(read_file(path), path.string());
}

}  // namespace coursekit
