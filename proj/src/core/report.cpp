#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace condlint {
namespace {

using nlohmann::json;

double round1(double x) { return std::round(x * 10.0) / 10.0; }

std::string fmt1(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", x);
  return buf;
}

std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += "<br>";
    else out += c;
  }
  return out;
}

json diagnostic_json(const Diagnostic& d) {
  json j;
  j["file"] = d.file;
  j["pattern"] = pattern_id(d.kind);
  j["title"] = pattern_title(d.kind);
  j["line"] = d.span.line_start;
  j["col"] = d.span.col_start;
  j["end_line"] = d.span.line_end;
  j["end_col"] = d.span.col_end;
  j["message"] = d.message;
  if (d.suggestion) {
    j["suggestion"] = {{"replacement", d.suggestion->replacement_text},
                       {"rationale", d.suggestion->rationale}};
  }
  return j;
}

}  // namespace

std::optional<ReportFormat> format_from_name(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

std::string_view format_name(ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Markdown: return "markdown";
  }
  return "";
}

std::string emit_diagnostics(const std::vector<Diagnostic>& diags,
                             ReportFormat format) {
  if (format == ReportFormat::Json) {
    json arr = json::array();
    for (const Diagnostic& d : diags) arr.push_back(diagnostic_json(d));
    return arr.dump(2) + "\n";
  }
  if (format == ReportFormat::Csv) {
    std::string out =
        "file,line,col,end_line,end_col,pattern,message,suggestion\n";
    for (const Diagnostic& d : diags) {
      out += csv_cell(d.file) + "," + std::to_string(d.span.line_start) + "," +
             std::to_string(d.span.col_start) + "," +
             std::to_string(d.span.line_end) + "," +
             std::to_string(d.span.col_end) + "," +
             std::string(pattern_id(d.kind)) + "," + csv_cell(d.message) +
             "," +
             csv_cell(d.suggestion ? d.suggestion->replacement_text : "") +
             "\n";
    }
    return out;
  }
  std::string out;
  std::string current_file;
  for (const Diagnostic& d : diags) {
    if (d.file != current_file) {
      if (!out.empty()) out += "\n";
      out += "## " + d.file + "\n\n";
      current_file = d.file;
    }
    out += "- `" + std::to_string(d.span.line_start) + ":" +
           std::to_string(d.span.col_start) + "` **" +
           std::string(pattern_id(d.kind)) + "**: " + d.message + "\n";
    if (d.suggestion) {
      out += "\n  ```python\n";
      std::string indented;
      std::size_t pos = 0;
      const std::string& rep = d.suggestion->replacement_text;
      while (pos <= rep.size()) {
        std::size_t eol = rep.find('\n', pos);
        const bool last = eol == std::string::npos;
        if (last) eol = rep.size();
        indented += "  " + rep.substr(pos, eol - pos) + "\n";
        if (last) break;
        pos = eol + 1;
      }
      out += indented + "  ```\n\n";
    }
  }
  if (out.empty()) out = "No diagnostics.\n";
  return out;
}

namespace {

// Shared scaffolding for the two matrix reports.
struct MatrixView {
  const CorpusStats& stats;
  std::vector<int> rows;  // pattern indexes
  std::vector<int> cols;  // group indexes

  explicit MatrixView(const CorpusStats& s) : stats(s) {
    rows = s.pattern_order;
    cols = s.group_order;
  }
};

}  // namespace

std::string emit_prevalence_matrix(const CorpusStats& stats,
                                   ReportFormat format) {
  const MatrixView v(stats);
  if (format == ReportFormat::Json) {
    json j;
    j["basis"] = stats.prevalence_by_submission ? "submissions" : "occurrences";
    json groups = json::array();
    for (int g : v.cols) j["groups"].push_back(stats.groups[static_cast<std::size_t>(g)]);
    json patterns = json::array();
    json pct = json::array();
    json totals = json::array();
    json counts = json::array();
    json total_counts = json::array();
    for (int k : v.rows) {
      patterns.push_back(pattern_id(static_cast<PatternKind>(k)));
      json row = json::array();
      json crow = json::array();
      for (int g : v.cols) {
        row.push_back(round1(stats.prevalence(g, k)));
        crow.push_back(stats.count[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
      }
      pct.push_back(row);
      counts.push_back(crow);
      totals.push_back(round1(stats.prevalence_total(k)));
      total_counts.push_back(stats.total_count[static_cast<std::size_t>(k)]);
    }
    j["patterns"] = patterns;
    j["prevalence_pct"] = pct;
    j["total_pct"] = totals;
    j["counts"] = counts;
    j["total_counts"] = total_counts;
    return j.dump(2) + "\n";
  }

  if (format == ReportFormat::Csv) {
    std::string out = "pattern";
    for (int g : v.cols) {
      out += "," + csv_cell(stats.groups[static_cast<std::size_t>(g)]);
    }
    out += ",total\n";
    for (int k : v.rows) {
      out += std::string(pattern_id(static_cast<PatternKind>(k)));
      for (int g : v.cols) out += "," + fmt1(round1(stats.prevalence(g, k)));
      out += "," + fmt1(round1(stats.prevalence_total(k))) + "\n";
    }
    return out;
  }

  std::string out = "| pattern |";
  for (int g : v.cols) {
    out += " " + md_cell(stats.groups[static_cast<std::size_t>(g)]) + " |";
  }
  out += " total |\n|---|";
  for (std::size_t i = 0; i < v.cols.size() + 1; ++i) out += "---|";
  out += "\n";
  for (int k : v.rows) {
    out += "| " + std::string(pattern_id(static_cast<PatternKind>(k))) + " |";
    for (int g : v.cols) out += " " + fmt1(round1(stats.prevalence(g, k))) + " |";
    out += " " + fmt1(round1(stats.prevalence_total(k))) + " |\n";
  }
  return out;
}

std::string emit_student_matrix(const CorpusStats& stats,
                                ReportFormat format) {
  const MatrixView v(stats);
  auto flagged = [&](int g, int k) {
    return static_cast<double>(
               stats.students[static_cast<std::size_t>(g)]
                             [static_cast<std::size_t>(k)]) >
           stats.threshold_2sd;
  };

  if (format == ReportFormat::Json) {
    json j;
    for (int g : v.cols) j["groups"].push_back(stats.groups[static_cast<std::size_t>(g)]);
    json patterns = json::array();
    json cellsj = json::array();
    json flags = json::array();
    json totals = json::array();
    for (int k : v.rows) {
      patterns.push_back(pattern_id(static_cast<PatternKind>(k)));
      json row = json::array();
      json frow = json::array();
      for (int g : v.cols) {
        row.push_back(stats.students[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
        frow.push_back(flagged(g, k));
      }
      cellsj.push_back(row);
      flags.push_back(frow);
      totals.push_back(stats.unique_students_total[static_cast<std::size_t>(k)]);
    }
    j["patterns"] = patterns;
    j["students"] = cellsj;
    j["flagged"] = flags;
    j["total_unique"] = totals;
    j["mean"] = stats.mean_students;
    j["sd"] = stats.sd_students;
    j["threshold_2sd"] = stats.threshold_2sd;
    return j.dump(2) + "\n";
  }

  auto cell_text = [&](int g, int k) {
    std::string c = std::to_string(
        stats.students[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
    if (flagged(g, k)) c += "*";
    return c;
  };

  if (format == ReportFormat::Csv) {
    std::string out = "pattern";
    for (int g : v.cols) {
      out += "," + csv_cell(stats.groups[static_cast<std::size_t>(g)]);
    }
    out += ",total_unique\n";
    for (int k : v.rows) {
      out += std::string(pattern_id(static_cast<PatternKind>(k)));
      for (int g : v.cols) out += "," + cell_text(g, k);
      out += "," +
             std::to_string(stats.unique_students_total[static_cast<std::size_t>(k)]) +
             "\n";
    }
    return out;
  }

  std::string out = "| pattern |";
  for (int g : v.cols) {
    out += " " + md_cell(stats.groups[static_cast<std::size_t>(g)]) + " |";
  }
  out += " total unique |\n|---|";
  for (std::size_t i = 0; i < v.cols.size() + 1; ++i) out += "---|";
  out += "\n";
  for (int k : v.rows) {
    out += "| " + std::string(pattern_id(static_cast<PatternKind>(k))) + " |";
    for (int g : v.cols) out += " " + cell_text(g, k) + " |";
    out += " " +
           std::to_string(stats.unique_students_total[static_cast<std::size_t>(k)]) +
           " |\n";
  }
  return out;
}

std::string emit_totals_bar_data(const CorpusStats& stats,
                                 ReportFormat format) {
  const auto total = stats.total_diagnostics;
  auto proportion = [&](int k) {
    if (total == 0) return 0.0;
    return static_cast<double>(stats.total_count[static_cast<std::size_t>(k)]) /
           static_cast<double>(total);
  };

  if (format == ReportFormat::Json) {
    json arr = json::array();
    for (int k : stats.pattern_order) {
      arr.push_back({{"pattern", pattern_id(static_cast<PatternKind>(k))},
                     {"count", stats.total_count[static_cast<std::size_t>(k)]},
                     {"proportion", proportion(k)}});
    }
    return arr.dump(2) + "\n";
  }
  if (format == ReportFormat::Csv) {
    std::string out = "pattern,count,proportion\n";
    for (int k : stats.pattern_order) {
      out += std::string(pattern_id(static_cast<PatternKind>(k))) + "," +
             std::to_string(stats.total_count[static_cast<std::size_t>(k)]) +
             "," + fmt6(proportion(k)) + "\n";
    }
    return out;
  }
  std::string out = "| pattern | count | proportion |\n|---|---|---|\n";
  for (int k : stats.pattern_order) {
    out += "| " + std::string(pattern_id(static_cast<PatternKind>(k))) + " | " +
           std::to_string(stats.total_count[static_cast<std::size_t>(k)]) +
           " | " + fmt6(proportion(k)) + " |\n";
  }
  return out;
}

std::string emit_stats_table(const CorpusStats& stats) {
  std::string out =
      "pattern,group,count,unique_students,submissions_with,prevalence_pct,"
      "rate_per_lloc\n";
  for (int k : stats.pattern_order) {
    for (int g : stats.group_order) {
      const auto gi = static_cast<std::size_t>(g);
      const auto ki = static_cast<std::size_t>(k);
      out += std::string(pattern_id(static_cast<PatternKind>(k))) + "," +
             csv_cell(stats.groups[gi]) + "," +
             std::to_string(stats.count[gi][ki]) + "," +
             std::to_string(stats.students[gi][ki]) + "," +
             std::to_string(stats.submissions_with[gi][ki]) + "," +
             fmt1(round1(stats.prevalence(g, k))) + "," +
             fmt6(stats.rate_per_lloc(g, k)) + "\n";
    }
  }
  return out;
}

namespace {

json summary_json(const CorpusResult& r) {
  json j;
  j["files"] = r.files.size();
  j["valid_files"] = r.valid_files;
  j["invalid_files"] = r.invalid_files;
  j["groups"] = r.stats.groups.size();
  j["diagnostics"] = r.stats.total_diagnostics;
  j["total_lloc"] = r.stats.total_lloc;
  j["mean_students_per_cell"] = r.stats.mean_students;
  j["sd_students_per_cell"] = r.stats.sd_students;
  j["threshold_2sd"] = r.stats.threshold_2sd;
  j["prevalence_basis"] =
      r.stats.prevalence_by_submission ? "submissions" : "occurrences";
  j["notices"] = r.notices.size();
  return j;
}

}  // namespace

std::string emit_summary(const CorpusResult& result, ReportFormat format) {
  const json j = summary_json(result);
  if (format == ReportFormat::Json) return j.dump(2) + "\n";
  if (format == ReportFormat::Csv) {
    std::string out = "key,value\n";
    for (const auto& [key, value] : j.items()) {
      out += key + "," +
             (value.is_string() ? value.get<std::string>() : value.dump()) +
             "\n";
    }
    return out;
  }
  std::string out;
  for (const auto& [key, value] : j.items()) {
    out += "- " + key + ": " +
           (value.is_string() ? value.get<std::string>() : value.dump()) +
           "\n";
  }
  return out;
}

std::string emit_corpus_report(const CorpusResult& result,
                               ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j;
    j["summary"] = summary_json(result);
    j["prevalence"] = json::parse(
        emit_prevalence_matrix(result.stats, ReportFormat::Json));
    j["students"] =
        json::parse(emit_student_matrix(result.stats, ReportFormat::Json));
    j["totals"] =
        json::parse(emit_totals_bar_data(result.stats, ReportFormat::Json));
    return j.dump(2) + "\n";
  }
  if (format == ReportFormat::Csv) {
    std::string out = "# summary\n";
    out += emit_summary(result, ReportFormat::Csv);
    out += "\n# prevalence\n";
    out += emit_prevalence_matrix(result.stats, ReportFormat::Csv);
    out += "\n# students\n";
    out += emit_student_matrix(result.stats, ReportFormat::Csv);
    out += "\n# totals\n";
    out += emit_totals_bar_data(result.stats, ReportFormat::Csv);
    out += "\n# stats\n";
    out += emit_stats_table(result.stats);
    return out;
  }
  std::string out = "# Corpus report\n\n## Summary\n\n";
  out += emit_summary(result, ReportFormat::Markdown);
  out += "\n## Prevalence (%)\n\n";
  out += emit_prevalence_matrix(result.stats, ReportFormat::Markdown);
  out += "\n## Students affected\n\n";
  out += emit_student_matrix(result.stats, ReportFormat::Markdown);
  out += "\n## Totals\n\n";
  out += emit_totals_bar_data(result.stats, ReportFormat::Markdown);
  return out;
}

std::vector<Diagnostic> collect_corpus_diagnostics(const CorpusResult& result) {
  std::vector<Diagnostic> all;
  for (const FileOutcome& f : result.files) {
    for (const Diagnostic& d : f.diagnostics) all.push_back(d);
  }
  std::sort(all.begin(), all.end(), diagnostic_less);
  return all;
}

}  // namespace condlint
