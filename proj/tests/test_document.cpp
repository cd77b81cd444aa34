#include "doctest.h"

#include <fstream>
#include <sstream>

#include "convval/document.hpp"
#include "convval/errors.hpp"
#include "convval/law_harness.hpp"
#include "support.hpp"

using namespace convval;
using testsupport::q;
using testsupport::vec;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(CONVVAL_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("function documents round-trip byte for byte") {
  for (const char* name : {"ind_square.json", "gauge_square.json"}) {
    const FunctionDocument doc = parse_function_document(data(name));
    const std::string canonical = serialize_function_document(doc);
    CHECK(serialize_function_document(parse_function_document(canonical)) == canonical);
    CHECK(parse_function_document(canonical).function == doc.function);
  }
  for (std::size_t n : {1, 2, 3}) {
    for (const auto& f : fixture_corpus(n, 12, 5)) {
      const std::string text = serialize_function_document(f.u, f.name);
      const FunctionDocument back = parse_function_document(text);
      CHECK(back.function == f.u);
      CHECK(back.provenance == f.name);
      CHECK(serialize_function_document(back) == text);
    }
  }
}

TEST_CASE("function document values") {
  const ClosedPwa ind = parse_function_document(data("ind_square.json")).function;
  CHECK(to_string(ind.eval(vec({"2", "0"}))) == "inf");
  CHECK(ind.eval(vec({"1/2", "1/2"})) == Extended::of(q("1/2")));
  const ClosedPwa g = parse_function_document(data("gauge_square.json")).function;
  CHECK(to_string(g.eval(vec({"-1/3", "1/4"}))) == "1/3");
}

TEST_CASE("function document errors") {
  CHECK_THROWS_AS(parse_function_document(data("bad_rational.json")), ParseError);
  try {
    parse_function_document(data("bad_rational.json"));
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("$.pieces[0].a[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_function_document(data("empty_domain.json")), EmptyDomain);
  try {
    parse_function_document("{\n\"schema\": \"convval/1\",\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 3", 0) == 0);
  }
  CHECK_THROWS_AS(parse_function_document(R"({"schema": "convval/2", "kind": "function"})"), ParseError);
  CHECK_THROWS_AS(parse_function_document(R"({"schema": "convval/1", "kind": "function", "n": 2,
      "pieces": [{"a": ["1"], "b": "0"}], "domain": []})"), ParseError);
  CHECK_THROWS_AS(parse_function_document(R"({"schema": "convval/1", "kind": "function", "n": 1,
      "pieces": [], "domain": []})"), InvalidArgument);
}

TEST_CASE("growth documents") {
  const GrowthFunction tent = parse_growth_document(data("tent_zeta.json"));
  CHECK(tent(q("1/4")) == Number(q("3/4")));
  const std::string text = serialize_growth_document(tent);
  CHECK(serialize_growth_document(parse_growth_document(text)) == text);
  const GrowthFunction e = parse_growth_document(data("exp_zeta.json"));
  CHECK(e.nonnegative());
  CHECK(serialize_growth_document(parse_growth_document(serialize_growth_document(e))) == serialize_growth_document(e));

  CHECK_THROWS_AS(parse_growth_document(data("step_zeta.json")), InvalidGrowthFunction);
  try {
    parse_growth_document(data("step_zeta.json"));
  } catch (const InvalidGrowthFunction& err) {
    CHECK(err.breakpoint == 1);
  }
  const PiecewisePoly step = parse_piecewise_document(data("step_zeta.json"));
  CHECK(step(q("1/2")) == Number(q(1)));
  CHECK(parse_growth_document(data("zero_zeta.json")).is_zero());
}

TEST_CASE("law report serialization is reproducible") {
  const std::string a = serialize_law_reports(run_suite("staircase", 4, 1));
  const std::string b = serialize_law_reports(run_suite("staircase", 4, 1));
  CHECK(a == b);
  CHECK(fnv1a_hex(a) == fnv1a_hex(b));
  CHECK(a.find("\"law\": \"staircase.two_path\"") != std::string::npos);
  CHECK(number_text(Number::inexact(0.1)) == "0.10000000000000001");
  CHECK(number_text(Number(q("-3/6"))) == "-1/2");
}
