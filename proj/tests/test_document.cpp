#include <doctest.h>

#include "compmod/document.hpp"

using namespace compmod;

namespace {

const char* kTerminalDoc = R"json({
  "version": 1,
  "models": {
    "one": {
      "types": ["1"],
      "data": {"1": ["*"]},
      "homs": {"1->1": [{"graph": {"*": "*"}}]}
    }
  },
  "simulations": {
    "id1": {
      "source": "one",
      "sets": {"1": ["*"]},
      "forcing": {"1": [["*", "*"]]}
    }
  },
  "tasks": [
    {"task": "validate-model", "model": "one"},
    {"task": "validate-simulation", "simulation": "id1"},
    {"task": "build-grothendieck", "model": "one", "simulation": "id1"}
  ]
})json";

}  // namespace

TEST_CASE("parse_document resolves the terminal example") {
  Document doc = parse_document(kTerminalDoc);
  CHECK(doc.models.count("one") == 1);
  CHECK(doc.presheaf_simulations.count("id1") == 1);
  CHECK(doc.tasks.size() == 3);
  CHECK(validate_model(doc.models.at("one")).ok());
}

TEST_CASE("diagnostics name the offending location") {
  CHECK_THROWS_WITH_AS(parse_document("{"), doctest::Contains("syntax"),
                       ParseError);

  // Unknown forcer in a forcing pair.
  std::string bad = kTerminalDoc;
  auto pos = bad.find("[[\"*\", \"*\"]]");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 12, "[[\"zz\", \"*\"]]");
  CHECK_THROWS_WITH_AS(parse_document(bad), doctest::Contains("zz"),
                       ParseError);

  // Unresolved model name.
  std::string unresolved = kTerminalDoc;
  pos = unresolved.find("\"source\": \"one\"");
  REQUIRE(pos != std::string::npos);
  unresolved.replace(pos, 15, "\"source\": \"two\"");
  CHECK_THROWS_WITH_AS(parse_document(unresolved), doctest::Contains("two"),
                       ParseError);

  CHECK_THROWS_AS(parse_document(R"({"version": 2})"), ParseError);

  // Wrong JSON value kinds become parse errors, not terminations.
  CHECK_THROWS_AS(parse_document(R"({"version": "one"})"), ParseError);
  CHECK_THROWS_AS(parse_document(R"({"version": 1, "tasks": [
    {"task": "check-pullback", "bound": "huge"}]})"),
                  ParseError);
}

TEST_CASE("serialize-parse round trip is the canonical form") {
  Document doc = parse_document(kTerminalDoc);
  std::string canon = serialize_document(doc);
  Document doc2 = parse_document(canon);
  CHECK(serialize_document(doc2) == canon);
  CHECK(doc2.models.at("one") == doc.models.at("one"));
}

TEST_CASE("round trip covers model-target simulations and categories") {
  const char* text = R"json({
    "version": 1,
    "models": {
      "m": {"types": ["s"], "data": {"s": ["a"]},
             "homs": {"s->s": [{"graph": {"a": "a"}}]}}
    },
    "simulations": {
      "selfsim": {"source": "m", "target": "m",
                   "type_map": {"s": "s"},
                   "forcing": {"s": [["a", "a"]]}}
    },
    "categories": {
      "pt": {"objects": ["c"], "arrows": [["id", "c", "c"]],
              "composition": [["id", "id", "id"]],
              "identities": {"c": "id"},
              "presheaf": {"objects": {"c": ["x"]},
                            "arrows": {"id": {"x": "x"}}}}
    },
    "tasks": [{"task": "validate-simulation", "simulation": "selfsim"},
               {"task": "check-canonical-equality", "category": "pt"}]
  })json";
  Document doc = parse_document(text);
  std::string canon = serialize_document(doc);
  Document doc2 = parse_document(canon);
  CHECK(serialize_document(doc2) == canon);
  auto reports = run_tasks(doc2);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].verdict == "pass");
  CHECK(reports[1].verdict == "pass");
}

TEST_CASE("run_tasks executes the terminal document") {
  Document doc = parse_document(kTerminalDoc);
  auto reports = run_tasks(doc);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.verdict == "pass");
  }
  CHECK(reports[2].statistics.at("pair_types") == 1);
}

TEST_CASE("reports are deterministic") {
  Document doc = parse_document(kTerminalDoc);
  CHECK(render_reports_text(run_tasks(doc)) ==
        render_reports_text(run_tasks(doc)));
  CHECK(render_reports_json(run_tasks(doc)) ==
        render_reports_json(run_tasks(doc)));
}

TEST_CASE("failing tasks carry witnesses and the fail verdict") {
  const char* broken = R"json({
    "version": 1,
    "models": {
      "m": {
        "types": ["s"],
        "data": {"s": ["a0", "a1"]},
        "homs": {"s->s": [{"graph": {"a0": "a0", "a1": "a1"}},
                           {"graph": {"a0": "a1"}}]}
      }
    },
    "tasks": [{"task": "validate-model", "model": "m"}]
  })json";
  Document doc = parse_document(broken);
  auto reports = run_tasks(doc);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == "fail");
  CHECK_FALSE(reports[0].witnesses.empty());
}

TEST_CASE("bound-exceeding pullback tasks are refused, not hung") {
  const char* doc_text = R"json({
    "version": 1,
    "models": {
      "big": {
        "types": ["s"],
        "data": {"s": ["e0", "e1", "e2", "e3"]},
        "homs": {"s->s": [{"graph": {"e0": "e0", "e1": "e1",
                                      "e2": "e2", "e3": "e3"}}]}
      }
    },
    "simulations": {
      "gid": {
        "source": "big", "target": "big",
        "type_map": {"s": "s"},
        "forcing": {"s": [["e0","e0"],["e1","e1"],["e2","e2"],["e3","e3"]]}
      },
      "diag": {
        "source": "big",
        "sets": {"s": ["e0", "e1", "e2", "e3"]},
        "forcing": {"s": [["e0","e0"],["e1","e1"],["e2","e2"],["e3","e3"]]}
      }
    },
    "tasks": [{"task": "check-pullback", "gamma": "gid", "delta": "diag"}]
  })json";
  Document doc = parse_document(doc_text);
  auto reports = run_tasks(doc);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == "refused");
}

TEST_CASE("unknown task kinds are refused with a message") {
  const char* doc_text = R"json({
    "version": 1,
    "tasks": [{"task": "frobnicate"}]
  })json";
  Document doc = parse_document(doc_text);
  auto reports = run_tasks(doc);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == "refused");
}
