#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/corpus.hpp"
#include "core/diagnostics.hpp"

namespace condlint {

enum class ReportFormat { Json, Csv, Markdown };

std::optional<ReportFormat> format_from_name(std::string_view name);
std::string_view format_name(ReportFormat format);

// Diagnostics listing, sorted by the caller.
std::string emit_diagnostics(const std::vector<Diagnostic>& diags,
                             ReportFormat format);

// Pattern-by-group prevalence percentages, one decimal, with the raw counts
// alongside in the JSON form. Rows follow pattern_order, columns group_order.
std::string emit_prevalence_matrix(const CorpusStats& stats,
                                   ReportFormat format);

// Unique students per pattern and group; cells above the mean + 2 sd
// threshold are flagged.
std::string emit_student_matrix(const CorpusStats& stats, ReportFormat format);

// Total occurrences per pattern with their proportion of all diagnostics,
// descending: the data behind a ranking bar chart.
std::string emit_totals_bar_data(const CorpusStats& stats,
                                 ReportFormat format);

// Lossless per-pattern, per-group table. CSV only; the header is stable:
// pattern,group,count,unique_students,submissions_with,prevalence_pct,rate_per_lloc
std::string emit_stats_table(const CorpusStats& stats);

std::string emit_summary(const CorpusResult& result, ReportFormat format);

// Everything above (minus per-file diagnostics) in one document.
std::string emit_corpus_report(const CorpusResult& result,
                               ReportFormat format);

// All diagnostics of a corpus run, merged and sorted.
std::vector<Diagnostic> collect_corpus_diagnostics(const CorpusResult& result);

}  // namespace condlint
