#include <doctest.h>

#include <cstdlib>

#include "coursekit/chunkers.hpp"
#include "coursekit/error.hpp"
#include "coursekit/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coursekit;

namespace {

Document sized(const std::vector<double>& sizes) {
  std::vector<DocumentLine> lines;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    lines.push_back({i, 1 + static_cast<int>(i / 40), "line " + std::to_string(i), sizes[i]});
  }
  return Document("sized", std::move(lines));
}

// 200 body lines at size 12 with single-line headings at the given lines.
Document with_headings(std::size_t n, const std::vector<std::pair<std::size_t, double>>& headings) {
  std::vector<double> sizes(n, 12.0);
  for (auto [line, size] : headings) sizes[line] = size;
  return sized(sizes);
}

Document fontless(std::size_t n, const std::string& text) {
  std::vector<DocumentLine> lines;
  for (std::size_t i = 0; i < n; ++i) lines.push_back({i, 1 + static_cast<int>(i / 40), text, std::nullopt});
  return Document("plain", std::move(lines));
}

std::vector<Vector> random_vectors(Rng& rng, std::size_t n, std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(dim);
    for (std::size_t d = 0; d < dim; ++d) v[d] = rng.normal();
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

TEST_CASE("font groups are maximal runs") {
  const auto groups = build_font_groups(sized({18, 12, 12, 18, 12, 12}));
  const std::vector<FontGroup> expected{{0, 0, 18}, {1, 2, 12}, {3, 3, 18}, {4, 5, 12}};
  CHECK(groups == expected);
  CHECK(build_font_groups(sized(std::vector<double>(7, 11.0))).size() == 1);
  CHECK(build_font_groups(sized({10, 12, 10, 12, 10})).size() == 5);
  CHECK_THROWS_AS(build_font_groups(fontless(3, "x")), UnsupportedDocumentError);
}

TEST_CASE("syntactic chunker picks the heading size") {
  const std::vector<std::size_t> heads{10, 50, 90, 130, 170};
  std::vector<std::pair<std::size_t, double>> h;
  for (auto l : heads) h.push_back({l, 18.0});
  const auto b = syntactic_chunk(with_headings(200, h));
  CHECK(b.line_starts == std::vector<std::size_t>{0, 10, 50, 90, 130, 170});
  CHECK(b.page_starts == std::vector<int>{1, 1, 2, 3, 4, 5});
}

TEST_CASE("a size seen once is disqualified") {
  std::vector<std::pair<std::size_t, double>> h{{0, 24.0}};
  for (std::size_t l : {5u, 30u, 60u, 90u, 120u, 150u}) h.push_back({l, 18.0});
  const auto doc = with_headings(200, h);
  const auto stats = font_size_stats(doc, build_font_groups(doc), {});
  REQUIRE(stats.size() == 3);
  CHECK(stats[0].font_size == 24.0);
  CHECK(stats[0].boundaries.size() == 1);
  CHECK(stats[1].boundaries.size() == 6);
  CHECK(syntactic_chunk(doc).line_starts == std::vector<std::size_t>{0, 5, 30, 60, 90, 120, 150});
}

TEST_CASE("too many headings falls back") {
  std::vector<std::pair<std::size_t, double>> h;
  for (std::size_t i = 0; i < 30; ++i) h.push_back({3 + 6 * i, 18.0});
  CHECK(syntactic_chunk(with_headings(200, h)).line_starts == std::vector<std::size_t>{0});

  // A second, smaller heading size still qualifies.
  for (std::size_t l : {40u, 100u, 160u}) h[l / 6].second = 14.0;
  const auto doc = with_headings(200, h);
  const auto stats = font_size_stats(doc, build_font_groups(doc), {});
  CHECK(stats[0].boundaries.size() == 27);
  CHECK(syntactic_chunk(doc).line_starts.size() == 4);
}

TEST_CASE("short heading text does not count") {
  std::vector<DocumentLine> lines;
  for (std::size_t i = 0; i < 40; ++i) {
    const bool head = i % 10 == 0;
    const std::string text = head ? (i == 20 ? " x " : "Heading " + std::to_string(i)) : "body text";
    lines.push_back({i, 1, text, head ? 18.0 : 12.0});
  }
  const auto b = syntactic_chunk(Document("t", lines));
  CHECK(b.line_starts == std::vector<std::size_t>{0, 10, 30});
}

TEST_CASE("extra rule can veto a size") {
  std::vector<std::pair<std::size_t, double>> h;
  for (std::size_t l : {10u, 50u, 90u}) h.push_back({l, 18.0});
  SyntacticParams p;
  p.extra_rule = [](const FontSizeStats& s) { return s.min_chunk_lines >= 50; };
  CHECK(syntactic_chunk(with_headings(200, h), p).line_starts == std::vector<std::size_t>{0});
  p.extra_rule = [](const FontSizeStats& s) { return s.max_chunk_lines >= 100; };
  CHECK(syntactic_chunk(with_headings(200, h), p).line_starts.size() == 4);
}

TEST_CASE("syntactic parameter validation") {
  SyntacticParams p;
  p.n_chunks = {5, 2};
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  CHECK_THROWS_AS(syntactic_chunk(fontless(5, "x")), UnsupportedDocumentError);
}

TEST_CASE("find_segments splits two orthogonal blocks") {
  std::vector<Vector> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(Vector{1, 0});
  for (int i = 0; i < 4; ++i) vs.push_back(Vector{0, 1});
  const SemanticParams p{4, 4};
  CHECK(find_segments(vs, 0, p) == std::vector<std::size_t>{4});
  CHECK(find_segments(vs, 100, p) == std::vector<std::size_t>{104});
  // Brute force over the window confirms the minimum.
  CHECK(oracles::window_argmin(vs, 0, 8, 4) == 4);
}

TEST_CASE("find_segments stopping and tie rules") {
  std::vector<Vector> same(10, Vector{1, 1});
  CHECK(find_segments(same, 0, {10, 4}).empty());
  CHECK(find_segments(same, 0, {9, 4}) == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(find_segments({}, 0, {}), ArgumentError);
  CHECK_THROWS_AS(find_segments(same, 0, {9, 1}), ArgumentError);
}

TEST_CASE("zero vectors recurse on the smallest window index") {
  const std::vector<Vector> zeros(200, Vector(8));
  // n=200: 50; [50,200): 50+37; [87,200): 87+28; [115,200): 115+21; rest stop.
  CHECK(find_segments(zeros, 0, {}) == std::vector<std::size_t>{50, 87, 115, 136});
  const auto b = semantic_chunk(fontless(200, "the of and"), fixtures::test_vectors(), fixtures::stoplist());
  CHECK(b.line_starts == std::vector<std::size_t>{0, 50, 87, 115, 136});
}

TEST_CASE("find_segments agrees with an exhaustive scan") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.index(300);
    const auto vs = random_vectors(rng, n, 8);
    const SemanticParams p{8 + static_cast<int>(rng.index(40)), 2 + static_cast<int>(rng.index(4))};
    std::vector<SplitRecord> trace;
    const auto got = find_segments(vs, 0, p, &trace);
    std::vector<SplitRecord> expected;
    oracles::segment(vs, 0, n, p, expected);
    REQUIRE(trace.size() == expected.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
      CHECK(trace[i].start == expected[i].start);
      CHECK(trace[i].size == expected[i].size);
      CHECK(trace[i].boundary == expected[i].boundary);
    }
    CHECK(got.size() == expected.size());
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("semantic chunker finds the topic join") {
  const auto doc = fixtures::two_topic_document(5);
  const auto b = semantic_chunk(doc, fixtures::test_vectors(), fixtures::stoplist());
  REQUIRE(b.line_starts.size() >= 2);
  bool near = false;
  for (auto s : b.line_starts) near = near || (s >= 72 && s <= 88);
  CHECK(near);
  // The chosen split is the exhaustive-scan minimum.
  const auto vs = line_vectors(doc, fixtures::test_vectors(), fixtures::stoplist());
  CHECK(b.line_starts[1] == oracles::window_argmin(vs, 0, vs.size(), 4));
}

TEST_CASE("short documents are a single chunk") {
  const auto doc = fixtures::two_topic_document(1, 25, 25);
  CHECK(semantic_chunk(doc, fixtures::test_vectors(), fixtures::stoplist()).line_starts ==
        std::vector<std::size_t>{0});
}

TEST_CASE("semantic parameter validation") {
  CHECK_THROWS_AS((SemanticParams{7, 4}.validate()), ArgumentError);
  CHECK_THROWS_AS((SemanticParams{80, 1}.validate()), ArgumentError);
  CHECK_NOTHROW((SemanticParams{8, 4}.validate()));
}

namespace {

// Ten heading/body section pairs per topic: 20 groups over 100 lines.
Document topic_sections(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DocumentLine> lines;
  for (int s = 0; s < 10; ++s) {
    const auto& words = s < 5 ? fixtures::bank_words() : fixtures::pharma_words();
    for (int l = 0; l < 10; ++l) {
      const std::size_t i = lines.size();
      lines.push_back({i, 1 + static_cast<int>(i / 40), fixtures::topic_line(rng, words), l == 0 ? 16.0 : 11.0});
    }
  }
  return Document("sections", std::move(lines));
}

}  // namespace

TEST_CASE("hybrid chunker splits on group boundaries") {
  const auto doc = topic_sections(9);
  const auto groups = build_font_groups(doc);
  REQUIRE(groups.size() == 20);
  CHECK(hybrid_stop_size(80, doc.size(), groups.size()) == 16);
  const auto b = hybrid_chunk(doc, fixtures::test_vectors(), fixtures::stoplist());
  CHECK(b.line_starts == std::vector<std::size_t>{0, 50});

  // Same answer from a brute-force scan over summed group vectors.
  const auto lv = line_vectors(doc, fixtures::test_vectors(), fixtures::stoplist());
  std::vector<Vector> gv;
  for (const auto& g : groups) {
    Vector v(8);
    for (std::size_t i = g.start; i <= g.end; ++i) v = vector_add(v, lv[i]);
    gv.push_back(v);
  }
  CHECK(groups[oracles::window_argmin(gv, 0, gv.size(), 4)].start == 50);
}

TEST_CASE("hybrid boundaries always start a group") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto doc = topic_sections(seed);
    const auto groups = build_font_groups(doc);
    SemanticParams p{8, 4};
    for (auto mode : {GroupVectorMode::Sum, GroupVectorMode::Mean}) {
      for (auto s : hybrid_chunk(doc, fixtures::test_vectors(), fixtures::stoplist(), p, {mode}).line_starts) {
        CHECK(std::any_of(groups.begin(), groups.end(), [&](const FontGroup& g) { return g.start == s; }));
      }
    }
  }
}

TEST_CASE("hybrid edge cases") {
  CHECK(hybrid_chunk(sized(std::vector<double>(50, 12.0)), fixtures::test_vectors(), fixtures::stoplist())
            .line_starts == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(hybrid_chunk(fontless(10, "ach"), fixtures::test_vectors(), fixtures::stoplist()),
                  UnsupportedDocumentError);
  CHECK(hybrid_stop_size(80, 1000, 10) == 4);
  CHECK(hybrid_stop_size(80, 100, 50) == 40);
}

TEST_CASE("chunks tile the document") {
  const auto doc = fixtures::two_topic_document(2, 40, 40);
  const auto chunks = split_chunks(doc, make_boundaries(doc, {40}));
  REQUIRE(chunks.size() == 2);
  CHECK(chunks[0].start_line == 0);
  CHECK(chunks[0].end_line == 39);
  CHECK(chunks[1].start_line == 40);
  CHECK(chunks[1].end_line == 79);
  CHECK(chunks[1].start_page == 2);
  CHECK(chunks[0].text + chunks[1].text == doc.text());
  CHECK(chunks[1].id() == doc.id() + ".1");
  CHECK(split_chunks(doc, make_boundaries(doc, {})).size() == 1);
  CHECK_THROWS_AS(split_chunks(doc, ChunkBoundaries{doc.id(), {0, 80}, {1, 3}}), ArgumentError);
}

TEST_CASE("materialize writes chunk files and a manifest") {
  const auto dir = fixtures::scratch_dir("materialize");
  const auto doc = fixtures::two_topic_document(2, 40, 40);
  const auto manifest = materialize_chunks(doc, make_boundaries(doc, {40}), dir);
  REQUIRE(manifest.size() == 2);
  CHECK(manifest[1].start_line == 40);
  CHECK(manifest[1].end_line == 79);
  CHECK(read_file(dir / manifest[0].file) + read_file(dir / manifest[1].file) == doc.text());
  const std::string first = read_file(dir / (doc.id() + ".manifest.jsonl"));
  CHECK(parse_manifest(first) == manifest);

  materialize_chunks(doc, make_boundaries(doc, {40}), dir);
  CHECK(read_file(dir / (doc.id() + ".manifest.jsonl")) == first);

  const auto whole = materialize_chunks(doc, make_boundaries(doc, {}), fixtures::scratch_dir("whole"));
  CHECK(whole.size() == 1);

  write_file(dir / "blocker", "x");
  CHECK_THROWS_AS(materialize_chunks(doc, make_boundaries(doc, {}), dir / "blocker" / "sub"), IoError);
}

TEST_CASE("chunk titles are the first line of each chunk") {
  std::vector<std::size_t> truth;
  const auto doc = fixtures::formal_document(4, &truth);
  const auto b = syntactic_chunk(doc);
  const auto titles = chunk_titles(doc, b);
  REQUIRE(titles.size() == truth.size());
  CHECK(titles[1] == doc.lines()[truth[1]].text);
}

TEST_CASE("chunk method names") {
  CHECK(parse_chunk_method("hybrid") == ChunkMethod::Hybrid);
  CHECK(to_string(ChunkMethod::Auto) == "auto");
  CHECK_THROWS_AS(parse_chunk_method("fancy"), ArgumentError);
}
