#include <filesystem>

#include "doctest.h"
#include "instances.hpp"

using namespace clift;

namespace {

const std::string kDir = CLIFT_FIXTURES;

Errc code_of(const std::string& text) {
  try {
    load_document(parse_json(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InternalObstruction;
}

std::string message_of(const std::string& text) {
  try {
    load_document(parse_json(text));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Json ring(int exponent) { return {{"exponents", {exponent}}, {"products", {{0, 0, 0, 1}}}}; }

}  // namespace

TEST_CASE("every fixture round-trips byte for byte") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kDir)) {
    if (entry.path().extension() != ".json") continue;
    const std::string text = read_file(entry.path().string());
    CAPTURE(entry.path().string());
    CHECK(roundtrip(text) == text);
    ++n;
  }
  CHECK(n >= 6);
}

TEST_CASE("generated documents round-trip") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.p = seed % 2 ? 3 : 2;
    spec.tower = seed % 3 == 0 ? TowerKind::ZMod : seed % 3 == 1 ? TowerKind::TruncPoly : TowerKind::SquareZero;
    spec.algebra = seed % 4 < 2 ? AlgebraKind::Trivial : AlgebraKind::Custom;
    const Instance inst = gen_instance(spec);
    Bundle b;
    b.algebra = default_algebra_doc(inst.A);
    b.complexes.emplace("C", inst.C);
    const std::string text = canonical(bundle_document(b));
    CHECK(roundtrip(text) == text);
    const std::string tower = canonical(envelope("tower", tower_payload(inst.A.tower())));
    CHECK(roundtrip(tower) == tower);
  }
}

TEST_CASE("canonical output sorts keys and ends with a newline") {
  const std::string s = canonical(parse_json(R"({"b": 1, "a": [2]})"));
  CHECK(s == "{\n  \"a\": [\n    2\n  ],\n  \"b\": 1\n}\n");
}

TEST_CASE("custom tower with I·J != 0 names the offending pair") {
  Json t = {{"schema", "tower"},
            {"version", 1},
            {"kind", "custom"},
            {"p", 2},
            {"rings", {{"bar", ring(4)}, {"mid", ring(2)}, {"base", ring(1)}}},
            {"maps", {{"bar_to_mid", {{1}}}, {"mid_to_base", {{1}}}}}};
  const std::string text = t.dump();
  CHECK(code_of(text) == Errc::ValidationError);
  const std::string msg = message_of(text);
  CHECK(msg.find("IJNonzero") != std::string::npos);
  CHECK(msg.find("i=") != std::string::npos);
  CHECK(msg.find("j=") != std::string::npos);

  t["rings"]["bar"] = ring(3);
  CHECK_NOTHROW(load_document(t));
}

TEST_CASE("d^2 != 0 fails as a complex but loads as a problem") {
  Json doc = parse_json(read_file(kDir + "/z4_complex.json"));
  // d⁰ = d¹ = 1 over Z/4.
  doc["d"][0][0][0] = Json::array({Json::array({1})});
  doc["d"][1][0][0] = Json::array({Json::array({1})});
  try {
    load_document(doc);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ValidationError);
    CHECK(std::string(e.what()).find("NotADifferential") != std::string::npos);
  }
  Json problem = parse_json(read_file(kDir + "/z4_zero.json"));
  problem["complexes"]["C"]["d"] = doc["d"];
  const Loaded l = load_document(problem);
  CHECK_FALSE(compose(l.bundle.complex("C").d, l.bundle.complex("C").d).is_zero());
}

TEST_CASE("malformed input") {
  try {
    parse_json("{\"schema\": ");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
  CHECK(code_of(R"({"schema": "tower", "version": 2, "kind": "zmod", "p": 2, "params": {"a": 1, "b": 1}})") ==
        Errc::SchemaMismatch);
  CHECK(code_of(R"({"schema": "cake", "version": 1})") == Errc::SchemaMismatch);
  CHECK(code_of(R"({"version": 1})") == Errc::SchemaMismatch);
  CHECK(code_of(R"({"schema": "tower", "version": 1, "kind": "zmod", "p": 4, "params": {"a": 1, "b": 1}})") ==
        Errc::ValidationError);
  CHECK(code_of(R"({"schema": "tower", "version": 1, "kind": "zmod", "p": 2})") == Errc::ValidationError);
}

TEST_CASE("standalone complex needs an algebra") {
  Json doc = parse_json(read_file(kDir + "/z4_complex.json"));
  const Json algebra = doc["algebra"];
  doc.erase("algebra");
  CHECK_THROWS(load_document(doc));
  const Loaded l = load_document(doc, algebra_from_payload(algebra));
  CHECK_FALSE(l.embedded_algebra);
  CHECK(l.bundle.complex("C").obj == fixtures::ranks111());
}
