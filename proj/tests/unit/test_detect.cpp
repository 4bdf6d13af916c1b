#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/detect.hpp"
#include "core/parser.hpp"
#include "doctest.h"
#include "support/exemplars.hpp"

using namespace condlint;
using namespace condlint::testsupport;

namespace {

std::vector<PatternKind> kinds_of(const std::string& source) {
  const ParsedModule m = parse_module(source, "t.py");
  REQUIRE(m.valid());
  std::vector<PatternKind> out;
  for (const Diagnostic& d : detect::detect_all(m)) out.push_back(d.kind);
  return out;
}

}  // namespace

TEST_CASE("each exemplar yields exactly its own diagnostic") {
  for (const Exemplar& ex : exemplars()) {
    const std::string id{pattern_id(ex.kind)};
    CAPTURE(id);
    const auto kinds = kinds_of(ex.source);
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == ex.kind);
  }
}

TEST_CASE("worked example flags only the removable else") {
  const auto kinds = kinds_of(worked_example());
  REQUIRE(kinds.size() == 1);
  CHECK(kinds[0] == PatternKind::UnnecessaryElse);
  CHECK(kinds_of(worked_example_refactored()).empty());
}

TEST_CASE("syntactic negation") {
  auto neg = [](const char* a, const char* b) {
    const Expr ea = parse_expr_text(a);
    const Expr eb = parse_expr_text(b);
    const bool ab = detect::negates(ea, eb);
    const bool ba = detect::negates(eb, ea);
    CHECK(ab == ba);  // always symmetric
    return ab;
  };

  SUBCASE("not wrapping") {
    CHECK(neg("cond", "not cond"));
    CHECK(neg("cond", "not (cond)"));
    CHECK(neg("a < b", "not (a < b)"));
    CHECK(!neg("cond", "not other"));
    // wrapping applies to any inner expression, negations included
    CHECK(neg("not cond", "not (not cond)"));
    CHECK(!neg("cond", "not (not cond)"));
  }
  SUBCASE("inverse comparison operators") {
    CHECK(neg("a == b", "a != b"));
    CHECK(neg("a < b", "a >= b"));
    CHECK(neg("a > b", "a <= b"));
    CHECK(neg("a is b", "a is not b"));
    CHECK(neg("a in b", "a not in b"));
  }
  SUBCASE("non-inverse operator pairs never match") {
    CHECK(!neg("a < b", "a > b"));
    CHECK(!neg("a <= b", "a >= b"));
    CHECK(!neg("a == b", "a >= b"));
    CHECK(!neg("a < b", "a <= b"));
  }
  SUBCASE("operands must line up") {
    CHECK(!neg("a == b", "a != c"));
    CHECK(!neg("a < b", "b >= a"));
    CHECK(neg("a + 1 < b", "a + 1 >= b"));
    CHECK(neg("(a) == b", "a != (b)"));  // outer parens are canonical
  }
  SUBCASE("opposite boolean literals") {
    CHECK(neg("True", "False"));
    CHECK(!neg("True", "True"));
  }
  SUBCASE("cross-category pairs never match") {
    CHECK(!neg("True", "cond"));
    CHECK(!neg("a == b", "cond"));
    CHECK(!neg("a == b", "False"));
  }
  SUBCASE("not-wrap of an opaque expression still matches") {
    CHECK(neg("a and b", "not (a and b)"));
    CHECK(!neg("a and b", "not (a and c)"));
  }
}

TEST_CASE("duplication family precedence") {
  SUBCASE("identical bodies beat everything") {
    const auto kinds = kinds_of(
        "if c:\n    a += 1\n    b += 1\nelse:\n    a += 1\n    b += 1\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::DuplicateIfElseBody);
  }
  SUBCASE("full shorter side beats several") {
    const auto kinds = kinds_of(
        "if c:\n    x = 1\n    a += 1\n    b += 1\n"
        "else:\n    a += 1\n    b += 1\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::UnnecessaryElse);
  }
  SUBCASE("shorter if side also collapses, via inversion") {
    const auto kinds = kinds_of(
        "if c:\n    a += 1\nelse:\n    x = 1\n    a += 1\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::UnnecessaryElse);
  }
  SUBCASE("two shared trailing statements") {
    const auto kinds = kinds_of(
        "if c:\n    x = 1\n    a += 1\n    b += 1\n"
        "else:\n    y = 1\n    a += 1\n    b += 1\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::SeveralDuplicateIfElseStatements);
  }
  SUBCASE("one shared trailing statement") {
    const auto kinds = kinds_of(
        "if c:\n    x = 1\n    b += 1\nelse:\n    y = 1\n    b += 1\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::DuplicateIfElseStatement);
  }
  SUBCASE("interior duplicates do not count") {
    CHECK(kinds_of(
              "if c:\n    b += 1\n    x = 1\nelse:\n    b += 1\n    y = 1\n")
              .empty());
  }
  SUBCASE("elif chains are exempt") {
    CHECK(kinds_of(
              "if c:\n    b += 1\nelif d:\n    b += 1\nelse:\n    b += 1\n")
              .empty());
  }
}

TEST_CASE("assignment family precedence") {
  SUBCASE("opposite bools returned is the most specific") {
    const auto kinds = kinds_of(
        "if c:\n    r = True\nelse:\n    r = False\nreturn r\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::IfElseAssignBoolReturn);
  }
  SUBCASE("opposite bools not returned") {
    const auto kinds =
        kinds_of("if c:\n    r = True\nelse:\n    r = False\nprint(r)\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::IfElseAssignBool);
  }
  SUBCASE("same name returned without opposite bools") {
    const auto kinds =
        kinds_of("if c:\n    r = a\nelse:\n    r = b\nreturn r\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::IfElseAssignReturn);
  }
  SUBCASE("returning a different name does not count") {
    CHECK(kinds_of("if c:\n    r = a\nelse:\n    r = b\nreturn q\n").empty());
  }
  SUBCASE("different targets do not count") {
    CHECK(kinds_of("if c:\n    r = a\nelse:\n    s = b\nreturn r\n").empty());
  }
  SUBCASE("identical assignments returned hit both families") {
    const auto kinds =
        kinds_of("if c:\n    r = a\nelse:\n    r = a\nreturn r\n");
    REQUIRE(kinds.size() == 2);
    CHECK(std::count(kinds.begin(), kinds.end(),
                     PatternKind::DuplicateIfElseBody) == 1);
    CHECK(std::count(kinds.begin(), kinds.end(),
                     PatternKind::IfElseAssignReturn) == 1);
  }
}

TEST_CASE("return bool rules") {
  SUBCASE("needs opposite literals") {
    CHECK(kinds_of("if c:\n    return True\nelse:\n    return True\n") ==
          std::vector<PatternKind>{PatternKind::DuplicateIfElseBody});
    CHECK(kinds_of("if c:\n    return True\nreturn True\n").empty());
  }
  SUBCASE("flipped literal order still fires") {
    const auto kinds =
        kinds_of("if c:\n    return False\nelse:\n    return True\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::IfElseReturnBool);
  }
  SUBCASE("if with elif does not fire the else form") {
    CHECK(kinds_of("if c:\n    return True\nelif d:\n    return False\n")
              .empty());
  }
  SUBCASE("next statement must be adjacent") {
    CHECK(kinds_of(
              "if c:\n    return True\nx = 1\nreturn False\n").empty());
  }
}

TEST_CASE("empty body rules") {
  SUBCASE("pass and self-assignment count as empty") {
    CHECK(kinds_of("if c:\n    pass\n") ==
          std::vector<PatternKind>{PatternKind::EmptyIfBody});
    CHECK(kinds_of("if c:\n    x = x\n") ==
          std::vector<PatternKind>{PatternKind::EmptyIfBody});
  }
  SUBCASE("each nonfunctional branch reports once") {
    const auto kinds = kinds_of(
        "if c:\n    pass\nelif d:\n    pass\nelse:\n    x += 1\n");
    CHECK(std::count(kinds.begin(), kinds.end(), PatternKind::EmptyIfBody) ==
          2);
  }
  SUBCASE("empty else") {
    const auto kinds = kinds_of("if c:\n    x += 1\nelse:\n    pass\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::EmptyElseBody);
  }
  SUBCASE("self-assignment with different spacing") {
    CHECK(kinds_of("if c:\n    x += 1\nelse:\n    y  =  y\n") ==
          std::vector<PatternKind>{PatternKind::EmptyElseBody});
  }
}

TEST_CASE("nesting rules") {
  SUBCASE("nested if fires only when the body is just the inner if") {
    CHECK(kinds_of("if a:\n    if b:\n        x = 1\n") ==
          std::vector<PatternKind>{PatternKind::NestedIf});
    CHECK(kinds_of("if a:\n    y = 1\n    if b:\n        x = 1\n").empty());
    CHECK(kinds_of("if a:\n    if b:\n        x = 1\n    y = 1\n").empty());
  }
  SUBCASE("inner elif or else blocks the merge") {
    CHECK(kinds_of(
              "if a:\n    if b:\n        x = 1\n    else:\n        y = 1\n")
              .empty());
  }
  SUBCASE("outer else blocks the merge") {
    const auto kinds = kinds_of(
        "if a:\n    if b:\n        x = 1\nelse:\n    y = 1\n");
    CHECK(kinds.empty());
  }
  SUBCASE("three levels report the outer and middle chains") {
    const auto kinds = kinds_of(
        "if a:\n    if b:\n        if c:\n            x = 1\n");
    CHECK(kinds == std::vector<PatternKind>{PatternKind::NestedIf,
                                            PatternKind::NestedIf});
  }
  SUBCASE("else-if versus confusing else") {
    CHECK(kinds_of("if a:\n    x = 1\nelse:\n    if b:\n        y = 1\n") ==
          std::vector<PatternKind>{PatternKind::ElseIf});
    const auto kinds = kinds_of(
        "if a:\n    x = 1\nelse:\n    if b:\n        y = 1\n"
        "    else:\n        z = 1\n");
    REQUIRE(kinds.size() == 1);
    CHECK(kinds[0] == PatternKind::ConfusingElse);
  }
  SUBCASE("extra statements beside the nested if block both rules") {
    CHECK(kinds_of("if a:\n    x = 1\nelse:\n    if b:\n        y = 1\n"
                   "    z = 1\n")
              .empty());
  }
  SUBCASE("an elif ladder is not a confusing else") {
    CHECK(kinds_of("if a:\n    x = 1\nelif b:\n    y = 1\nelse:\n    z = 1\n")
              .empty());
  }
}

TEST_CASE("unnecessary elif") {
  SUBCASE("fires on a syntactic complement") {
    CHECK(kinds_of("if c:\n    x = 1\nelif not c:\n    y = 1\n") ==
          std::vector<PatternKind>{PatternKind::UnnecessaryElif});
    CHECK(kinds_of("if a == b:\n    x = 1\nelif a != b:\n    y = 1\n") ==
          std::vector<PatternKind>{PatternKind::UnnecessaryElif});
  }
  SUBCASE("needs exactly two branches and no else") {
    CHECK(kinds_of("if c:\n    x = 1\nelif not c:\n    y = 1\n"
                   "else:\n    z = 1\n")
              .empty());
    CHECK(kinds_of("if c:\n    x = 1\nelif d:\n    y = 1\n"
                   "elif not c:\n    z = 1\n")
              .empty());
  }
  SUBCASE("unrelated elif conditions are fine") {
    CHECK(kinds_of("if c:\n    x = 1\nelif d:\n    y = 1\n").empty());
  }
}

TEST_CASE("detection inside nested scopes") {
  const auto kinds = kinds_of(
      "def f():\n"
      "    for i in r:\n"
      "        while t:\n"
      "            if c:\n"
      "                return True\n"
      "            return False\n");
  REQUIRE(kinds.size() == 1);
  CHECK(kinds[0] == PatternKind::IfReturnBool);
}

TEST_CASE("diagnostics are ordered by file position") {
  const ParsedModule m = parse_module(
      "if a:\n    pass\n"
      "if b:\n    return True\nreturn False\n",
      "t.py");
  REQUIRE(m.valid());
  const auto diags = detect::detect_all(m);
  REQUIRE(diags.size() == 2);
  CHECK(diags[0].span.line_start <= diags[1].span.line_start);
  CHECK(diags[0].kind == PatternKind::EmptyIfBody);
  CHECK(diags[1].kind == PatternKind::IfReturnBool);
}

TEST_CASE("running the rules on an invalid module throws") {
  const ParsedModule m = parse_module("if a\n", "t.py");
  REQUIRE(!m.valid());
  CHECK_THROWS_AS(detect::run_rules(m), std::invalid_argument);
}

TEST_CASE("messages name the construct") {
  const ParsedModule m = parse_module(
      "if c:\n    r = True\nelse:\n    r = False\n", "t.py");
  const auto diags = detect::detect_all(m);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("'r'") != std::string::npos);
  CHECK(diags[0].file == "t.py");
}
