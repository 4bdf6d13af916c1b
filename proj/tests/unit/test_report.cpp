#include <cstdint>
#include <string>
#include <vector>

#include "core/corpus.hpp"
#include "core/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace condlint;
using nlohmann::json;

namespace {

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

Diagnostic diag(const std::string& file, PatternKind kind, int line,
                const std::string& message) {
  Diagnostic d;
  d.file = file;
  d.kind = kind;
  d.span = Span{line, 1, line, 10};
  d.message = message;
  return d;
}

// Two groups, two patterns, with known counts: g1 has 3 empty-if across two
// students and 1 nested-if; g2 has 1 empty-if.
CorpusStats sample_stats(bool by_submission = false) {
  CorpusAccum accum;
  accum.add(outcome("g1", "s1", 10,
                    {PatternKind::EmptyIfBody, PatternKind::EmptyIfBody}));
  accum.add(outcome("g1", "s2", 10,
                    {PatternKind::EmptyIfBody, PatternKind::NestedIf}));
  accum.add(outcome("g2", "s3", 40, {PatternKind::EmptyIfBody}));
  return finalize_stats(accum, by_submission);
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("format names") {
  CHECK(format_from_name("json") == ReportFormat::Json);
  CHECK(format_from_name("csv") == ReportFormat::Csv);
  CHECK(format_from_name("markdown") == ReportFormat::Markdown);
  CHECK(format_from_name("md") == ReportFormat::Markdown);
  CHECK(!format_from_name("text").has_value());
  CHECK(!format_from_name("").has_value());
  CHECK(format_name(ReportFormat::Json) == "json");
  CHECK(format_name(ReportFormat::Csv) == "csv");
  CHECK(format_name(ReportFormat::Markdown) == "markdown");
}

TEST_CASE("diagnostics listings") {
  std::vector<Diagnostic> diags = {
      diag("a.py", PatternKind::EmptyIfBody, 3, "no effect"),
      diag("b.py", PatternKind::NestedIf, 1, "merge, please \"now\""),
  };
  diags[0].suggestion = RewriteSuggestion{"x = 1\ny = 2", "Hoists."};

  SUBCASE("json keeps every field") {
    const json arr = json::parse(emit_diagnostics(diags, ReportFormat::Json));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["file"] == "a.py");
    CHECK(arr[0]["pattern"] == "empty_if_body");
    CHECK(arr[0]["title"] == "branch body with no effect");
    CHECK(arr[0]["line"] == 3);
    CHECK(arr[0]["col"] == 1);
    CHECK(arr[0]["end_line"] == 3);
    CHECK(arr[0]["end_col"] == 10);
    CHECK(arr[0]["suggestion"]["replacement"] == "x = 1\ny = 2");
    CHECK(arr[0]["suggestion"]["rationale"] == "Hoists.");
    CHECK(arr[1].contains("suggestion") == false);
  }
  SUBCASE("csv quotes commas and doubles quotes") {
    const std::string out = emit_diagnostics(diags, ReportFormat::Csv);
    const std::string header =
        "file,line,col,end_line,end_col,pattern,message,suggestion\n";
    CHECK(out.rfind(header, 0) == 0);
    CHECK(out.find("a.py,3,1,3,10,empty_if_body,no effect,\"x = 1\ny = 2\"") !=
          std::string::npos);
    CHECK(out.find("\"merge, please \"\"now\"\"\"") != std::string::npos);
  }
  SUBCASE("markdown groups by file") {
    const std::string out = emit_diagnostics(diags, ReportFormat::Markdown);
    CHECK(out.find("## a.py\n") != std::string::npos);
    CHECK(out.find("## b.py\n") != std::string::npos);
    CHECK(out.find("**empty_if_body**") != std::string::npos);
    CHECK(out.find("```python") != std::string::npos);
    CHECK(out.find("## a.py") < out.find("## b.py"));
  }
  SUBCASE("empty listing") {
    CHECK(emit_diagnostics({}, ReportFormat::Markdown) == "No diagnostics.\n");
    CHECK(emit_diagnostics({}, ReportFormat::Json) == "[]\n");
  }
}

TEST_CASE("prevalence matrix") {
  const CorpusStats s = sample_stats();
  // g1 rate 4/20 beats g2 rate 1/40; empty_if_body count 4 beats nested_if 1
  const int g1 = s.group_index("g1");
  const int g2 = s.group_index("g2");
  REQUIRE(g1 >= 0);
  REQUIRE(g2 >= 0);
  CHECK(s.group_order[0] == g1);
  CHECK(s.group_order[1] == g2);
  CHECK(static_cast<PatternKind>(s.pattern_order[0]) ==
        PatternKind::EmptyIfBody);
  CHECK(static_cast<PatternKind>(s.pattern_order[1]) == PatternKind::NestedIf);

  SUBCASE("csv has ordered columns and one-decimal cells") {
    const std::string out = emit_prevalence_matrix(s, ReportFormat::Csv);
    CHECK(out.rfind("pattern,g1,g2,total\n", 0) == 0);
    CHECK(out.find("empty_if_body,75.0,100.0,80.0\n") != std::string::npos);
    CHECK(out.find("nested_if,25.0,0.0,20.0\n") != std::string::npos);
    CHECK(count_lines(out) == 1 + kPatternCount);
  }
  SUBCASE("json round-trips the numbers") {
    const json j = json::parse(emit_prevalence_matrix(s, ReportFormat::Json));
    CHECK(j["basis"] == "occurrences");
    CHECK(j["groups"] == json::array({"g1", "g2"}));
    CHECK(j["patterns"][0] == "empty_if_body");
    CHECK(j["prevalence_pct"][0][0] == 75.0);
    CHECK(j["prevalence_pct"][0][1] == 100.0);
    CHECK(j["counts"][0][0] == 3);
    CHECK(j["counts"][0][1] == 1);
    CHECK(j["total_pct"][0] == 80.0);
    CHECK(j["total_counts"][0] == 4);
  }
  SUBCASE("markdown row order follows the rate rule") {
    const std::string out = emit_prevalence_matrix(s, ReportFormat::Markdown);
    CHECK(out.rfind("| pattern | g1 | g2 | total |\n", 0) == 0);
    CHECK(out.find("| empty_if_body | 75.0 | 100.0 | 80.0 |") !=
          std::string::npos);
  }
  SUBCASE("submission basis changes the denominators") {
    const CorpusStats sub = sample_stats(true);
    // g1: empty-if in 2 of 3 flagged rows, nested-if in 1
    const json j =
        json::parse(emit_prevalence_matrix(sub, ReportFormat::Json));
    CHECK(j["basis"] == "submissions");
    const double cell = j["prevalence_pct"][0][0].get<double>();
    CHECK(cell == doctest::Approx(66.7).epsilon(1e-9));
  }
}

TEST_CASE("student matrix flags outliers") {
  CorpusAccum accum;
  for (int i = 0; i < 15; ++i) {
    accum.add(outcome("g", "s" + std::to_string(i), 10,
                      {PatternKind::EmptyIfBody}));
  }
  const CorpusStats s = finalize_stats(accum, false);
  // one cell of 15 among fourteen zeros sits far above mean + 2 sd
  CHECK(s.threshold_2sd < 15.0);
  CHECK(s.threshold_2sd > 0.0);

  const std::string csv = emit_student_matrix(s, ReportFormat::Csv);
  CHECK(csv.rfind("pattern,g,total_unique\n", 0) == 0);
  CHECK(csv.find("empty_if_body,15*,15\n") != std::string::npos);
  CHECK(csv.find("nested_if,0,0\n") != std::string::npos);

  const json j = json::parse(emit_student_matrix(s, ReportFormat::Json));
  CHECK(j["students"][0][0] == 15);
  CHECK(j["flagged"][0][0] == true);
  CHECK(j["flagged"][1][0] == false);
  CHECK(j["mean"] == doctest::Approx(1.0));
  CHECK(j["threshold_2sd"].get<double>() == doctest::Approx(s.threshold_2sd));

  const std::string md = emit_student_matrix(s, ReportFormat::Markdown);
  CHECK(md.find("| empty_if_body | 15* | 15 |") != std::string::npos);
}

TEST_CASE("totals bar data") {
  const CorpusStats s = sample_stats();
  const std::string csv = emit_totals_bar_data(s, ReportFormat::Csv);
  CHECK(csv.rfind("pattern,count,proportion\n", 0) == 0);
  CHECK(csv.find("empty_if_body,4,0.800000\n") != std::string::npos);
  CHECK(csv.find("nested_if,1,0.200000\n") != std::string::npos);

  const json j = json::parse(emit_totals_bar_data(s, ReportFormat::Json));
  CHECK(j[0]["pattern"] == "empty_if_body");
  CHECK(j[0]["count"] == 4);
  CHECK(j[0]["proportion"] == doctest::Approx(0.8));

  const CorpusStats none = finalize_stats(CorpusAccum{}, false);
  const std::string empty_csv = emit_totals_bar_data(none, ReportFormat::Csv);
  CHECK(empty_csv.find(",0,0.000000\n") != std::string::npos);
}

TEST_CASE("stats table is lossless and stable") {
  const CorpusStats s = sample_stats();
  const std::string out = emit_stats_table(s);
  const std::string header =
      "pattern,group,count,unique_students,submissions_with,prevalence_pct,"
      "rate_per_lloc\n";
  CHECK(out.rfind(header, 0) == 0);
  CHECK(count_lines(out) == 1 + kPatternCount * 2);
  CHECK(out.find("empty_if_body,g1,3,2,2,75.0,0.150000\n") !=
        std::string::npos);
  CHECK(out.find("empty_if_body,g2,1,1,1,100.0,0.025000\n") !=
        std::string::npos);
  CHECK(out.find("nested_if,g1,1,1,1,25.0,0.050000\n") != std::string::npos);
}

TEST_CASE("summary counts") {
  CorpusResult r;
  CorpusAccum accum;
  accum.add(outcome("g1", "s1", 12, {PatternKind::EmptyIfBody}));
  r.stats = finalize_stats(accum, false);
  r.files.resize(3);
  r.valid_files = 2;
  r.invalid_files = 1;
  r.notices.push_back("skipped (no layout match): x.txt");

  const json j = json::parse(emit_summary(r, ReportFormat::Json));
  CHECK(j["files"] == 3);
  CHECK(j["valid_files"] == 2);
  CHECK(j["invalid_files"] == 1);
  CHECK(j["groups"] == 1);
  CHECK(j["diagnostics"] == 1);
  CHECK(j["total_lloc"] == 12);
  CHECK(j["prevalence_basis"] == "occurrences");
  CHECK(j["notices"] == 1);

  const std::string csv = emit_summary(r, ReportFormat::Csv);
  CHECK(csv.rfind("key,value\n", 0) == 0);
  CHECK(csv.find("valid_files,2\n") != std::string::npos);

  const std::string md = emit_summary(r, ReportFormat::Markdown);
  CHECK(md.find("- diagnostics: 1\n") != std::string::npos);
}

TEST_CASE("combined corpus report") {
  CorpusResult r;
  CorpusAccum accum;
  accum.add(outcome("g1", "s1", 10, {PatternKind::EmptyIfBody}));
  r.stats = finalize_stats(accum, false);
  r.files.resize(1);
  r.valid_files = 1;

  const json j = json::parse(emit_corpus_report(r, ReportFormat::Json));
  CHECK(j.contains("summary"));
  CHECK(j.contains("prevalence"));
  CHECK(j.contains("students"));
  CHECK(j.contains("totals"));

  const std::string md = emit_corpus_report(r, ReportFormat::Markdown);
  CHECK(md.find("# Corpus report") != std::string::npos);
  CHECK(md.find("## Prevalence (%)") != std::string::npos);
  CHECK(md.find("## Students affected") != std::string::npos);
  CHECK(md.find("## Totals") != std::string::npos);

  const std::string csv = emit_corpus_report(r, ReportFormat::Csv);
  CHECK(csv.find("# summary\n") != std::string::npos);
  CHECK(csv.find("# stats\n") != std::string::npos);
}

TEST_CASE("corpus diagnostics merge in order") {
  CorpusResult r;
  FileOutcome f1;
  f1.diagnostics.push_back(diag("b.py", PatternKind::NestedIf, 5, "m1"));
  FileOutcome f2;
  f2.diagnostics.push_back(diag("a.py", PatternKind::EmptyIfBody, 9, "m2"));
  f2.diagnostics.push_back(diag("a.py", PatternKind::EmptyIfBody, 2, "m3"));
  r.files = {f1, f2};

  const auto all = collect_corpus_diagnostics(r);
  REQUIRE(all.size() == 3);
  CHECK(all[0].file == "a.py");
  CHECK(all[0].span.line_start == 2);
  CHECK(all[1].span.line_start == 9);
  CHECK(all[2].file == "b.py");
}

TEST_CASE("emitters are deterministic across accumulation orders") {
  const std::vector<FileOutcome> outs = {
      outcome("g1", "s1", 10, {PatternKind::EmptyIfBody}),
      outcome("g2", "s2", 20, {PatternKind::NestedIf}),
      outcome("g1", "s3", 5, {PatternKind::IfReturnBool}),
  };
  CorpusAccum fwd, rev;
  for (const auto& o : outs) fwd.add(o);
  for (auto it = outs.rbegin(); it != outs.rend(); ++it) rev.add(*it);

  const CorpusStats a = finalize_stats(fwd, false);
  const CorpusStats b = finalize_stats(rev, false);
  for (ReportFormat f :
       {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Markdown}) {
    CHECK(emit_prevalence_matrix(a, f) == emit_prevalence_matrix(b, f));
    CHECK(emit_student_matrix(a, f) == emit_student_matrix(b, f));
    CHECK(emit_totals_bar_data(a, f) == emit_totals_bar_data(b, f));
  }
  CHECK(emit_stats_table(a) == emit_stats_table(b));
}
