#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "doctest.h"
#include "support/temptree.hpp"

using namespace condlint;
using condlint::testsupport::TempTree;

namespace {

bool matches(const LayoutPattern& lp, const std::string& rel,
             const std::string& want_group = "",
             const std::string& want_student = "") {
  std::string g, s;
  if (!lp.match(rel, g, s)) return false;
  if (!want_group.empty() && g != want_group) return false;
  if (!want_student.empty() && s != want_student) return false;
  return true;
}

FileOutcome outcome(const std::string& group, const std::string& student,
                    int lloc, const std::vector<PatternKind>& kinds) {
  FileOutcome out;
  out.meta.group_id = group;
  out.meta.student_id = student;
  out.meta.rel_path = group + "/" + student + "/f.py";
  out.read_ok = true;
  out.valid = true;
  out.lloc = lloc;
  for (PatternKind k : kinds) {
    Diagnostic d;
    d.kind = k;
    out.diagnostics.push_back(d);
  }
  return out;
}

constexpr auto kEmptyIf = PatternKind::EmptyIfBody;
constexpr auto kNested = PatternKind::NestedIf;
constexpr auto kRetBool = PatternKind::IfReturnBool;

}  // namespace

TEST_CASE("layouts need exactly one of each placeholder") {
  CHECK_THROWS_AS(LayoutPattern::compile("*.py"), std::invalid_argument);
  CHECK_THROWS_AS(LayoutPattern::compile("{group}/*.py"),
                  std::invalid_argument);
  CHECK_THROWS_AS(LayoutPattern::compile("{student}/*.py"),
                  std::invalid_argument);
  CHECK_THROWS_AS(LayoutPattern::compile("{group}/{group}/{student}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(LayoutPattern::compile("{group}/{student}/{student}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(LayoutPattern::compile(""), std::invalid_argument);
  CHECK_NOTHROW(LayoutPattern::compile("{group}/{student}/*.py"));
  CHECK_NOTHROW(LayoutPattern::compile("**/{group}_{student}.py"));
  CHECK(LayoutPattern::compile("{group}/{student}").pattern() ==
        "{group}/{student}");
}

TEST_CASE("layout matching") {
  SUBCASE("one directory level per placeholder") {
    const auto lp = LayoutPattern::compile("{group}/{student}/*.py");
    CHECK(matches(lp, "lab1/alice/main.py", "lab1", "alice"));
    CHECK(matches(lp, "lab1/alice/v2.py"));
    CHECK(!matches(lp, "lab1/alice/main.txt"));
    CHECK(!matches(lp, "lab1/main.py"));
    CHECK(!matches(lp, "lab1/alice/sub/main.py"));
  }
  SUBCASE("double star spans any number of directories") {
    const auto lp = LayoutPattern::compile("**/{group}/{student}/*.py");
    CHECK(matches(lp, "sem1/week2/lab1/alice/a.py", "lab1", "alice"));
    CHECK(matches(lp, "lab1/alice/a.py", "lab1", "alice"));
    CHECK(!matches(lp, "alice/a.py"));
  }
  SUBCASE("question mark is one character") {
    const auto lp = LayoutPattern::compile("{group}/{student}/v?.py");
    CHECK(matches(lp, "g/s/v1.py"));
    CHECK(!matches(lp, "g/s/v12.py"));
    CHECK(!matches(lp, "g/s/v.py"));
  }
  SUBCASE("both placeholders in one segment") {
    const auto lp = LayoutPattern::compile("{group}_{student}/*.py");
    CHECK(matches(lp, "lab2_bob/x.py", "lab2", "bob"));
    CHECK(!matches(lp, "lab2bob/x.py"));
  }
  SUBCASE("student taken from the file name") {
    const auto lp = LayoutPattern::compile("{group}/{student}.py");
    CHECK(matches(lp, "hw3/carol.py", "hw3", "carol"));
    CHECK(!matches(lp, "hw3/carol.pyc"));
  }
  SUBCASE("dots are literal") {
    const auto lp = LayoutPattern::compile("{group}/{student}/a.py");
    CHECK(!matches(lp, "g/s/aXpy"));
    CHECK(matches(lp, "g/s/a.py"));
  }
  SUBCASE("leading and trailing slashes are tolerated") {
    const auto lp = LayoutPattern::compile("/{group}/{student}/*.py/");
    CHECK(matches(lp, "g/s/a.py"));
  }
}

TEST_CASE("scanning a corpus tree") {
  TempTree t;
  t.write("lab1/alice/main.py", "x = 1\n");
  t.write("lab1/bob/code.py", "y = 2\n");
  t.write("lab2/alice/x.py", "z = 3\n");
  t.write("README.md", "hello\n");
  t.write("lab1/notes.txt", "notes\n");
  t.write("lab1/alice/extra/deep.py", "d = 4\n");

  const auto lp = LayoutPattern::compile("{group}/{student}/*.py");
  const ScanResult scan = scan_corpus(t.root, lp);

  REQUIRE(scan.metas.size() == 3);
  CHECK(scan.metas[0].rel_path == "lab1/alice/main.py");
  CHECK(scan.metas[1].rel_path == "lab1/bob/code.py");
  CHECK(scan.metas[2].rel_path == "lab2/alice/x.py");
  CHECK(scan.metas[0].group_id == "lab1");
  CHECK(scan.metas[0].student_id == "alice");
  CHECK(scan.metas[2].group_id == "lab2");

  REQUIRE(scan.notices.size() == 3);
  for (const std::string& n : scan.notices) {
    CHECK(n.rfind("skipped (no layout match): ", 0) == 0);
  }

  CHECK_THROWS_AS(scan_corpus(t.root / "missing", lp), std::runtime_error);
}

TEST_CASE("accumulator counts, flags and dedups") {
  CorpusAccum accum;
  accum.add(outcome("g1", "alice", 10, {kEmptyIf, kEmptyIf, kNested}));
  accum.add(outcome("g1", "alice", 5, {kEmptyIf}));
  accum.add(outcome("g1", "bob", 3, {}));

  FileOutcome bad = outcome("g1", "eve", 99, {kEmptyIf});
  bad.valid = false;
  accum.add(bad);
  FileOutcome unread = outcome("g1", "mallory", 99, {kEmptyIf});
  unread.read_ok = false;
  accum.add(unread);

  REQUIRE(accum.groups.count("g1") == 1);
  const GroupAccum& g = accum.groups.at("g1");
  CHECK(g.count[static_cast<std::size_t>(kEmptyIf)] == 3);
  CHECK(g.count[static_cast<std::size_t>(kNested)] == 1);
  CHECK(g.submissions_with[static_cast<std::size_t>(kEmptyIf)] == 2);
  CHECK(g.submissions_with[static_cast<std::size_t>(kNested)] == 1);
  CHECK(g.students[static_cast<std::size_t>(kEmptyIf)].size() == 1);
  CHECK(g.all_students.size() == 2);
  CHECK(g.lloc == 18);
  CHECK(g.submissions == 3);
}

TEST_CASE("merging partial accumulators is exact") {
  const std::vector<FileOutcome> outs = {
      outcome("g1", "alice", 10, {kEmptyIf, kNested}),
      outcome("g2", "bob", 20, {kRetBool}),
      outcome("g1", "bob", 5, {kEmptyIf}),
      outcome("g2", "alice", 7, {}),
      outcome("g1", "carol", 9, {kNested, kNested}),
  };

  CorpusAccum whole;
  for (const auto& o : outs) whole.add(o);

  CorpusAccum even, odd;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    (i % 2 == 0 ? even : odd).add(outs[i]);
  }
  CorpusAccum merged = even;
  merged.merge(odd);

  CorpusAccum reversed = odd;
  reversed.merge(even);

  for (const CorpusAccum* acc : {&merged, &reversed}) {
    REQUIRE(acc->groups.size() == whole.groups.size());
    for (const auto& [id, want] : whole.groups) {
      const GroupAccum& got = acc->groups.at(id);
      CHECK(got.count == want.count);
      CHECK(got.submissions_with == want.submissions_with);
      CHECK(got.students == want.students);
      CHECK(got.all_students == want.all_students);
      CHECK(got.lloc == want.lloc);
      CHECK(got.submissions == want.submissions);
    }
  }
}

TEST_CASE("cell statistics") {
  const CellStats cs = cell_stats({0, 10, 20, 30});
  CHECK(cs.mean == 15.0);
  CHECK(cs.sd == doctest::Approx(std::sqrt(125.0)).epsilon(1e-12));
  CHECK(cs.threshold ==
        doctest::Approx(15.0 + 2.0 * std::sqrt(125.0)).epsilon(1e-12));

  const CellStats empty = cell_stats({});
  CHECK(empty.mean == 0.0);
  CHECK(empty.sd == 0.0);
  CHECK(empty.threshold == 0.0);

  const CellStats one = cell_stats({5});
  CHECK(one.mean == 5.0);
  CHECK(one.sd == 0.0);
  CHECK(one.threshold == 5.0);
}

TEST_CASE("finalized stats carry the matrix cell screen") {
  CorpusAccum accum;
  accum.add(outcome("g1", "alice", 10, {kEmptyIf}));
  accum.add(outcome("g2", "bob", 10, {kEmptyIf, kNested}));
  const CorpusStats s = finalize_stats(accum, false);

  std::vector<std::int64_t> flat;
  for (const auto& row : s.students) {
    flat.insert(flat.end(), row.begin(), row.end());
  }
  const CellStats cs = cell_stats(flat);
  CHECK(s.mean_students == cs.mean);
  CHECK(s.sd_students == cs.sd);
  CHECK(s.threshold_2sd == cs.threshold);
  CHECK(flat.size() == 2u * kPatternCount);
}

TEST_CASE("groups order by diagnostics per logical line") {
  CorpusAccum accum;
  // rates: hi 10/50 = .2; lo and tie both 1/10 = .1; zero has no findings
  for (int i = 0; i < 10; ++i) {
    accum.add(outcome("hi", "s" + std::to_string(i), 5, {kEmptyIf}));
  }
  accum.add(outcome("lo", "a", 10, {kNested}));
  accum.add(outcome("tie", "b", 10, {kNested}));
  accum.add(outcome("zero", "c", 10, {}));

  const CorpusStats s = finalize_stats(accum, false);
  REQUIRE(s.groups.size() == 4);
  std::vector<std::string> ordered;
  for (int gi : s.group_order) {
    ordered.push_back(s.groups[static_cast<std::size_t>(gi)]);
  }
  CHECK(ordered == std::vector<std::string>{"hi", "lo", "tie", "zero"});
}

TEST_CASE("rate ties compare exactly, not through floats") {
  CorpusAccum accum;
  // 1/3 and 33/99 are the same rate; the id breaks the tie
  accum.add(outcome("zz", "a", 3, {kEmptyIf}));
  FileOutcome big = outcome("aa", "b", 99, {});
  for (int i = 0; i < 33; ++i) big.diagnostics.push_back([] {
    Diagnostic d;
    d.kind = kEmptyIf;
    return d;
  }());
  accum.add(big);

  const CorpusStats s = finalize_stats(accum, false);
  std::vector<std::string> ordered;
  for (int gi : s.group_order) {
    ordered.push_back(s.groups[static_cast<std::size_t>(gi)]);
  }
  CHECK(ordered == std::vector<std::string>{"aa", "zz"});
}

TEST_CASE("patterns order by total count with id tiebreak") {
  CorpusAccum accum;
  accum.add(outcome("g", "s1", 10,
                    {kRetBool, kRetBool, kRetBool, kEmptyIf, kNested}));
  accum.add(outcome("g", "s2", 10, {kRetBool, kEmptyIf, kNested}));
  const CorpusStats s = finalize_stats(accum, false);

  REQUIRE(s.pattern_order.size() == kPatternCount);
  CHECK(static_cast<PatternKind>(s.pattern_order[0]) == kRetBool);
  // empty_if_body and nested_if both count 2; ids break the tie
  CHECK(static_cast<PatternKind>(s.pattern_order[1]) == kEmptyIf);
  CHECK(static_cast<PatternKind>(s.pattern_order[2]) == kNested);
  for (std::size_t i = 3; i + 1 < s.pattern_order.size(); ++i) {
    CHECK(pattern_id(static_cast<PatternKind>(s.pattern_order[i])) <
          pattern_id(static_cast<PatternKind>(s.pattern_order[i + 1])));
  }
}

TEST_CASE("prevalence bases") {
  CorpusAccum accum;
  accum.add(outcome("g", "s1", 10, {kEmptyIf, kEmptyIf, kEmptyIf}));
  accum.add(outcome("g", "s2", 20, {kNested}));

  SUBCASE("share of diagnostics") {
    const CorpusStats s = finalize_stats(accum, false);
    const int g = s.group_index("g");
    REQUIRE(g == 0);
    CHECK(s.prevalence(g, static_cast<int>(kEmptyIf)) == 75.0);
    CHECK(s.prevalence(g, static_cast<int>(kNested)) == 25.0);
    CHECK(s.prevalence_total(static_cast<int>(kEmptyIf)) == 75.0);
    CHECK(s.rate_per_lloc(g, static_cast<int>(kEmptyIf)) ==
          doctest::Approx(0.1));
    CHECK(s.group_rate(g) == doctest::Approx(4.0 / 30.0));
    CHECK(!s.prevalence_by_submission);
  }
  SUBCASE("share of flagged submissions") {
    const CorpusStats s = finalize_stats(accum, true);
    const int g = s.group_index("g");
    CHECK(s.prevalence(g, static_cast<int>(kEmptyIf)) == 50.0);
    CHECK(s.prevalence(g, static_cast<int>(kNested)) == 50.0);
    CHECK(s.prevalence_by_submission);
  }
}

TEST_CASE("unique student totals union across groups") {
  CorpusAccum accum;
  accum.add(outcome("g1", "alice", 10, {kEmptyIf}));
  accum.add(outcome("g1", "bob", 10, {kEmptyIf}));
  accum.add(outcome("g2", "alice", 10, {kEmptyIf}));
  const CorpusStats s = finalize_stats(accum, false);

  const int g1 = s.group_index("g1");
  const int g2 = s.group_index("g2");
  CHECK(s.students[static_cast<std::size_t>(g1)]
                  [static_cast<std::size_t>(kEmptyIf)] == 2);
  CHECK(s.students[static_cast<std::size_t>(g2)]
                  [static_cast<std::size_t>(kEmptyIf)] == 1);
  CHECK(s.unique_students_total[static_cast<std::size_t>(kEmptyIf)] == 2);
  CHECK(s.total_count[static_cast<std::size_t>(kEmptyIf)] == 3);
  CHECK(s.total_diagnostics == 3);
}

TEST_CASE("analyzing a corpus tree end to end") {
  TempTree t;
  t.write("lab1/alice/a.py", "if c:\n    pass\n");
  t.write("lab1/bob/b.py", "x = 1\n");
  t.write("lab2/carol/c.py", "if c\n");
  t.write("lab2/dave/d.py",
          "if c:\n    return True\nelse:\n    return False\n");

  const auto lp = LayoutPattern::compile("{group}/{student}/*.py");
  const ScanResult scan = scan_corpus(t.root, lp);
  REQUIRE(scan.metas.size() == 4);

  AnalyzeOptions options;
  options.workers = 1;
  const CorpusResult r = analyze_corpus(scan.metas, options);

  CHECK(r.valid_files == 3);
  CHECK(r.invalid_files == 1);
  REQUIRE(r.files.size() == 4);
  CHECK(r.files[0].meta.rel_path == "lab1/alice/a.py");
  CHECK(!r.files[2].valid);
  CHECK(!r.files[2].parse_errors.empty());
  CHECK(r.files[2].diagnostics.empty());

  REQUIRE(r.stats.groups == std::vector<std::string>{"lab1", "lab2"});
  CHECK(r.stats.count[0][static_cast<std::size_t>(kEmptyIf)] == 1);
  CHECK(r.stats.count[1][static_cast<std::size_t>(
            PatternKind::IfElseReturnBool)] == 1);
  // the invalid submission adds nothing
  CHECK(r.stats.submissions[1] == 1);
  CHECK(r.stats.total_diagnostics == 2);

  SUBCASE("worker count does not change the outcome") {
    AnalyzeOptions par = options;
    par.workers = 4;
    const CorpusResult r2 = analyze_corpus(scan.metas, par);
    CHECK(r2.valid_files == r.valid_files);
    CHECK(r2.invalid_files == r.invalid_files);
    REQUIRE(r2.files.size() == r.files.size());
    for (std::size_t i = 0; i < r.files.size(); ++i) {
      REQUIRE(r2.files[i].diagnostics.size() == r.files[i].diagnostics.size());
      for (std::size_t j = 0; j < r.files[i].diagnostics.size(); ++j) {
        const Diagnostic& a = r.files[i].diagnostics[j];
        const Diagnostic& b = r2.files[i].diagnostics[j];
        CHECK(a.kind == b.kind);
        CHECK(a.span == b.span);
        CHECK(a.message == b.message);
      }
    }
    CHECK(r2.stats.groups == r.stats.groups);
    CHECK(r2.stats.total_diagnostics == r.stats.total_diagnostics);
    CHECK(r2.stats.group_order == r.stats.group_order);
    CHECK(r2.stats.pattern_order == r.stats.pattern_order);
  }
}
