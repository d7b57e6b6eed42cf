#include <doctest.h>

#include "coursekit/error.hpp"
#include "coursekit/ingest.hpp"
#include "fixtures.hpp"

using namespace coursekit;

TEST_CASE("line records with font sizes") {
  const std::string content =
      R"({"line":0,"page":1,"text":"Payments","font_size":18})"
      "\n"
      R"({"line":1,"page":1,"text":"ACH moves funds.","font_size":12})"
      "\n"
      R"({"line":2,"page":1,"text":"Wire is faster.","font_size":12})"
      "\n";
  const Document doc = parse_lines(content, "d");
  CHECK(doc.size() == 3);
  CHECK(doc.has_fonts());
  CHECK(doc.lines()[0].font_size == 18.0);
  CHECK(doc.lines()[2].text == "Wire is faster.");
}

TEST_CASE("missing text field reports the record") {
  try {
    parse_lines(R"({"line":0,"page":1})", "d");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("mixed font presence means no fonts") {
  const std::string content =
      R"({"line":0,"page":1,"text":"a","font_size":18})"
      "\n"
      R"({"line":1,"page":1,"text":"b"})"
      "\n";
  CHECK_FALSE(parse_lines(content, "d").has_fonts());
}

TEST_CASE("line record validation") {
  CHECK_THROWS_AS(parse_lines(R"({"line":0,"page":0,"text":"a"})", "d"), ParseError);
  CHECK_THROWS_AS(parse_lines(R"({"line":0,"page":1,"text":"a","font_size":0})", "d"), ParseError);
  CHECK_THROWS_AS(parse_lines("{\"line\":0,\"page\":2,\"text\":\"a\"}\n{\"line\":1,\"page\":1,\"text\":\"b\"}\n", "d"),
                  ParseError);
  CHECK_THROWS_AS(parse_lines("not json", "d"), ParseError);
  CHECK_THROWS_AS(parse_lines("\n\n", "d"), EmptyDocumentError);
}

TEST_CASE("line records round trip") {
  const Document doc = fixtures::formal_document(3);
  CHECK(parse_lines(format_lines(doc), doc.id()) == doc);
}

TEST_CASE("plain text paging") {
  std::string content;
  for (int i = 0; i < 80; ++i) content += "line " + std::to_string(i) + "\n";
  const Document doc = parse_plain_text(content, "p", 40);
  REQUIRE(doc.size() == 80);
  CHECK(doc.page_of(0) == 1);
  CHECK(doc.page_of(39) == 1);
  CHECK(doc.page_of(40) == 2);
  CHECK(doc.page_of(79) == 2);
  CHECK_FALSE(doc.has_fonts());

  CHECK_THROWS_AS(parse_plain_text("", "p"), EmptyDocumentError);
  const Document one = parse_plain_text("only line\n", "p");
  CHECK(one.size() == 1);
  CHECK_FALSE(one.has_fonts());
}

TEST_CASE("document invariants") {
  CHECK_THROWS_AS(Document("d", {{1, 1, "a", std::nullopt}}), ArgumentError);
  CHECK_THROWS_AS(Document("d", {{0, 1, "a", -3.0}}), ArgumentError);
  CHECK(Document("d", {{0, 1, "a", std::nullopt}, {1, 1, "b", std::nullopt}}).text() == "a\nb\n");
}

TEST_CASE("tokenize") {
  CHECK(tokenize("ACH Payments.") == std::vector<std::string>{"ach", "payments"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("(giro payments),") == std::vector<std::string>{"giro", "payments"});
  CHECK(tokenize("  a\tb\n") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("content tokens") {
  const Stoplist stop({"the", "of"});
  CHECK(content_tokens("the ACH network", stop) == std::vector<std::string>{"ach", "network"});
  CHECK(content_tokens("The of the", stop).empty());
  CHECK(content_tokens("Giro (credit) Transfer.", Stoplist{}) == tokenize("Giro (credit) Transfer."));
}

TEST_CASE("stoplist file") {
  const Stoplist& s = fixtures::stoplist();
  CHECK(s.contains("the"));
  CHECK_FALSE(s.contains("payments"));
}

TEST_CASE("load_document dispatches on extension") {
  const auto dir = fixtures::scratch_dir("ingest");
  write_file(dir / "a.txt", "one\ntwo\n");
  write_file(dir / "b.jsonl", R"({"line":0,"page":1,"text":"x","font_size":10})");
  CHECK(load_document(dir / "a.txt").id() == "a");
  CHECK_FALSE(load_document(dir / "a.txt").has_fonts());
  CHECK(load_document(dir / "b.jsonl").has_fonts());
  CHECK_THROWS_AS(load_document(dir / "missing.txt"), IoError);
}
