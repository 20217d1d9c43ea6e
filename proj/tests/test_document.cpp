#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "perhom/document.hpp"
#include "perhom/random.hpp"

using namespace perhom;
using fixture::Q;

namespace {

const Field F5 = Field::prime(5);

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Expects a ParseError at `pointer` whose message contains `needle`.
void expect_parse_error(const std::string& text, const std::string& pointer, const std::string& needle = "") {
  try {
    parse_document(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pointer(), pointer) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

void expect_round_trip(const Document& d) {
  const std::string text = serialize(d);
  Document back = parse_document(text);
  EXPECT_TRUE(back == d) << text;
  EXPECT_EQ(serialize(back), text);
}

}  // namespace

TEST(Document, MinimalPeriodicInstance) {
  auto d = parse_document(R"({"kind":"periodic","field":{"fp":5},"n":1,"dims":[1],"diffs":[[["0"]]]})");
  ASSERT_TRUE(std::holds_alternative<PeriodicComplex>(d));
  const auto& p = std::get<PeriodicComplex>(d);
  EXPECT_EQ(p.field(), F5);
  EXPECT_EQ(p.dims(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(serialize(d), "{\"diffs\":[[[0]]],\"dims\":[1],\"field\":{\"fp\":5},\"kind\":\"periodic\",\"n\":1}\n");
}

TEST(Document, NonPrimeCharacteristic) {
  expect_parse_error(R"({"kind":"periodic","field":{"fp":4},"n":1,"dims":[1],"diffs":[[["0"]]]})", "/field/fp",
                     "p not prime");
  expect_parse_error(R"({"kind":"periodic","field":{"fp":1},"n":1,"dims":[1],"diffs":[[[0]]]})", "/field/fp",
                     "p not prime");
  expect_parse_error(R"({"kind":"periodic","field":"R","n":1,"dims":[1],"diffs":[[[0]]]})", "/field");
}

TEST(Document, UnknownFieldsAreRejected) {
  expect_parse_error(R"({"kind":"complex","field":"Q","lo":0,"dims":[1],"diffs":[],"extra":1})", "/extra",
                     "unknown field");
  expect_parse_error(R"({"kind":"periodic","field":{"fp":5,"q":2},"n":1,"dims":[1],"diffs":[[[0]]]})", "/field/q");
  expect_parse_error(R"({"kind":"polygon","field":"Q"})", "/kind", "unknown document kind");
  expect_parse_error(R"({"field":"Q","lo":0,"dims":[1],"diffs":[]})", "", "missing field \"kind\"");
}

TEST(Document, ShapeErrorsCarryPointers) {
  expect_parse_error(R"({"kind":"complex","field":"Q","lo":0,"dims":[1,2],"diffs":[[["1"]]]})", "/diffs/0",
                     "expected 2 entries");
  expect_parse_error(R"({"kind":"complex","field":"Q","lo":0,"dims":[1,1],"diffs":[]})", "/diffs");
  expect_parse_error(R"({"kind":"periodic","field":"Q","n":2,"dims":[1],"diffs":[]})", "/dims");
  expect_parse_error(R"({"kind":"complex","field":"Q","lo":0,"dims":[1,-1],"diffs":[[]]})", "/dims/1");
}

TEST(Document, EntrySyntax) {
  auto complex_with = [](const std::string& field, const std::string& entry) {
    return R"({"kind":"complex","field":)" + field + R"(,"lo":0,"dims":[1,1],"diffs":[[[)" + entry + "]]]}";
  };
  expect_parse_error(complex_with("\"Q\"", "\"1/0\""), "/diffs/0/0/0", "zero denominator");
  expect_parse_error(complex_with("\"Q\"", "\"1.5\""), "/diffs/0/0/0", "malformed rational");
  expect_parse_error(complex_with("\"Q\"", "0.5"), "/diffs/0/0/0");
  expect_parse_error(complex_with("\"Q\"", "\"1/-2\""), "/diffs/0/0/0");
  expect_parse_error(complex_with(R"({"fp":5})", "5"), "/diffs/0/0/0", "[0, p)");
  expect_parse_error(complex_with(R"({"fp":5})", "-1"), "/diffs/0/0/0");
  expect_parse_error(complex_with(R"({"fp":5})", "\"2/3\""), "/diffs/0/0/0");

  auto d = parse_document(complex_with("\"Q\"", "\"-6/4\""));
  EXPECT_EQ(std::get<BoundedComplex>(d).diff(0).at(0, 0), mpq_class(-3, 2));
  EXPECT_EQ(serialize(d), "{\"diffs\":[[[\"-3/2\"]]],\"dims\":[1,1],\"field\":\"Q\",\"kind\":\"complex\",\"lo\":0}\n");
}

TEST(Document, StructuralInvariantsAreChecked) {
  // d∘d != 0
  expect_parse_error(R"({"kind":"complex","field":"Q","lo":0,"dims":[1,1,1],"diffs":[[["1"]],[["1"]]]})", "",
                     "d∘d = 0");
  // not a chain map: f^1 d = 2 but d f^0 = 1
  expect_parse_error(
      R"({"kind":"chain-map","field":"Q","lo":0,"components":[[["1"]],[["2"]]],)"
      R"("source":{"lo":0,"dims":[1,1],"diffs":[[["1"]]]},"target":{"lo":0,"dims":[1,1],"diffs":[[["1"]]]}})",
      "", "chain map");
  // ξ^2 != 0
  expect_parse_error(
      R"({"kind":"graded-module","field":"Q","algebra":{"ext":1},"window":[-2,0],"dims":[1,1,1],)"
      R"("actions":[[[],[["1"]],[["1"]]]]})",
      "", "module relation");
  // δ² != 0
  expect_parse_error(
      R"({"kind":"flag","field":"Q","parts":[1,1,1],"blocks":[[],[[["1"]]],[[["0"]],[["1"]]]]})", "", "square to zero");
}

TEST(Document, MalformedJson) {
  expect_parse_error("{\"kind\": ", "", "malformed JSON");
  expect_parse_error("[1, 2]", "", "object");
}

TEST(DocumentProperty, RoundTripOfEveryKind) {
  Rng rng(300);
  for (int trial = 0; trial < 20; ++trial) {
    const Field& f = trial % 2 ? F5 : Q;
    auto x = random_complex(rng, f, 3, 4);
    auto y = random_complex(rng, f, 3, 4);
    expect_round_trip(x);
    expect_round_trip(random_periodic_complex(rng, f, rng.uniform(1, 3), 3));
    expect_round_trip(random_chain_map(rng, x, y));
    const int c = rng.uniform(1, 3);
    expect_round_trip(random_graded_module(rng, f, c, 0, 3));
    expect_round_trip(random_graded_complex(rng, f, c, 0, 3, 3));
    expect_round_trip(random_flag(rng, f, rng.uniform(1, 4), 3));
  }
  expect_round_trip(BoundedComplex(Q));
  expect_round_trip(GradedComplex(F5, Algebra::poly(2), 0, 3));
  expect_round_trip(exterior_algebra(Q, 3));
}

TEST(DocumentGolden, CorpusIsCanonical) {
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PERHOM_GOLDEN_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    const std::string bytes = read_file(entry.path());
    EXPECT_EQ(serialize(parse_document(bytes)), bytes) << entry.path();
  }
  EXPECT_GE(files, 6u);
}
