#include <doctest.h>

#include <cmath>

#include "coursekit/embeddings.hpp"
#include "coursekit/error.hpp"
#include "fixtures.hpp"

using namespace coursekit;

TEST_CASE("vocab limit truncates in file order") {
  const std::string content = "a 1 0\nb 0 1\nc 1 1\nd 2 2\ne 3 3\n";
  const auto table = EmbeddingTable::parse(content, 3);
  CHECK(table.size() == 3);
  CHECK(table.dim() == 2);
  CHECK(table.contains("a"));
  CHECK(table.contains("c"));
  CHECK_FALSE(table.contains("d"));
}

TEST_CASE("short vector line is a format error") {
  try {
    EmbeddingTable::parse("a 1 0 0\nb 1 0\n");
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("header line sets the dimension") {
  std::string content = "1000 300\n";
  for (int w = 0; w < 1000; ++w) {
    content += "w" + std::to_string(w);
    for (int d = 0; d < 300; ++d) content += " 0.5";
    content += '\n';
  }
  const auto table = EmbeddingTable::parse(content, 1000);
  CHECK(table.dim() == 300);
  CHECK(table.size() == 1000);
}

TEST_CASE("bundled test vectors") {
  const auto& t = fixtures::test_vectors();
  CHECK(t.dim() == 8);
  CHECK(t.size() == fixtures::bank_words().size() + fixtures::pharma_words().size());
  for (const auto& w : fixtures::bank_words()) CHECK(t.contains(w));
}

TEST_CASE("mean bag of words") {
  EmbeddingTable t(2, 10);
  const double a[] = {2, 0}, b[] = {0, 2};
  t.insert("a", a);
  t.insert("b", b);
  const std::vector<std::string> one{"a"}, two{"a", "b"}, oov{"x", "y"};
  CHECK(mean_bow(one, t) == Vector{2, 0});
  CHECK(mean_bow(two, t) == Vector{1, 1});
  CHECK(mean_bow(oov, t).is_zero());
  const std::vector<std::string> mixed{"a", "zzz"};
  CHECK(mean_bow(mixed, t) == Vector{2, 0});
}

TEST_CASE("cosine") {
  const Vector v{0.3, -1.2, 4.0};
  CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine(Vector{1, 0}, Vector{0, 1}) == 0.0);
  CHECK(cosine(Vector{0, 0}, Vector{1, 1}) == 0.0);
  CHECK(cosine(Vector{1, 0}, Vector{-1, 0}) == -1.0);
}

TEST_CASE("vector arithmetic") {
  CHECK(vector_add(Vector{1, 2}, Vector{3, 4}) == Vector{4, 6});
  CHECK(vector_sub(Vector{4, 6}, Vector{3, 4}) == Vector{1, 2});
  const Vector v{1.5, -2.5};
  CHECK(vector_add(v, Vector(2)) == v);
  CHECK_THROWS_AS(vector_add(Vector{1}, Vector{1, 2}), ArgumentError);
}

TEST_CASE("invalid vocab limit") {
  CHECK_THROWS_AS(EmbeddingTable(2, 0), ArgumentError);
}
