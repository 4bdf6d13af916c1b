#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/patterns.hpp"

namespace condlint {

// A corpus layout names where the group (assignment) and student identifiers
// live in each submission path. Segments are '/'-separated glob patterns with
// {group} and {student} placeholders, '*' and '?' wildcards, and '**' as a
// full segment matching any number of directories.
class LayoutPattern {
 public:
  // Throws std::invalid_argument unless the pattern holds exactly one
  // {group} and one {student}.
  static LayoutPattern compile(const std::string& pattern);

  bool match(const std::string& rel_path, std::string& group,
             std::string& student) const;
  const std::string& pattern() const { return pattern_; }

 private:
  struct Segment {
    bool any_depth = false;  // the '**' segment
    std::string regex_text;
    int group_capture = 0;    // 1-based capture index or 0
    int student_capture = 0;
  };
  std::string pattern_;
  std::vector<Segment> segments_;
};

struct SubmissionMeta {
  std::string group_id;
  std::string student_id;
  std::filesystem::path path;
  std::string rel_path;
};

struct ScanResult {
  std::vector<SubmissionMeta> metas;  // sorted by rel_path
  std::vector<std::string> notices;   // skipped paths and other non-fatal news
};

// Walks root and matches files against the layout. Throws std::runtime_error
// when root is missing or unreadable.
ScanResult scan_corpus(const std::filesystem::path& root,
                       const LayoutPattern& layout);

struct AnalyzeOptions {
  int workers = 0;  // 0: pick from hardware
  bool prevalence_by_submission = false;
  CheckOptions check;
};

struct FileOutcome {
  SubmissionMeta meta;
  bool read_ok = true;
  bool valid = false;
  int lloc = 0;
  std::vector<Diagnostic> diagnostics;
  std::vector<ParseError> parse_errors;
};

// Per-group aggregation with the student sets still materialized, so partial
// results merge exactly (the merge is associative and commutative).
struct GroupAccum {
  std::array<std::int64_t, kPatternCount> count{};
  std::array<std::int64_t, kPatternCount> submissions_with{};
  std::array<std::set<std::string>, kPatternCount> students;
  std::set<std::string> all_students;
  std::int64_t lloc = 0;
  std::int64_t submissions = 0;

  void merge(const GroupAccum& other);
};

struct CorpusAccum {
  std::map<std::string, GroupAccum> groups;

  void add(const FileOutcome& outcome);
  void merge(const CorpusAccum& other);
};

struct CorpusStats {
  std::vector<std::string> groups;  // sorted ids
  std::vector<std::array<std::int64_t, kPatternCount>> count;
  std::vector<std::array<std::int64_t, kPatternCount>> submissions_with;
  std::vector<std::array<std::int64_t, kPatternCount>> students;
  std::vector<std::int64_t> lloc;
  std::vector<std::int64_t> submissions;
  std::array<std::int64_t, kPatternCount> total_count{};
  std::array<std::int64_t, kPatternCount> unique_students_total{};
  std::int64_t total_diagnostics = 0;
  std::int64_t total_lloc = 0;
  // Mean and population standard deviation of the per-group unique-student
  // cells, and the mean + 2 sd outlier threshold.
  double mean_students = 0;
  double sd_students = 0;
  double threshold_2sd = 0;
  bool prevalence_by_submission = false;
  // Groups by diagnostics per logical line descending; patterns by total
  // count descending. Ties break on identifier.
  std::vector<int> group_order;
  std::vector<int> pattern_order;

  int group_index(const std::string& id) const;
  // Percentage of the group's diagnostics (or flagged submissions when
  // prevalence_by_submission) carried by this pattern.
  double prevalence(int group, int pattern) const;
  double prevalence_total(int pattern) const;
  double rate_per_lloc(int group, int pattern) const;
  double group_rate(int group) const;
};

// Mean, population standard deviation, and mean + 2 sd threshold over a flat
// list of matrix cells. The outlier screen runs this over the flattened
// group-by-pattern unique-student matrix.
struct CellStats {
  double mean = 0;
  double sd = 0;
  double threshold = 0;
};

CellStats cell_stats(const std::vector<std::int64_t>& cells);

CorpusStats finalize_stats(const CorpusAccum& accum,
                           bool prevalence_by_submission);

struct CorpusResult {
  CorpusStats stats;
  std::vector<FileOutcome> files;  // in meta order
  std::vector<std::string> notices;
  std::int64_t valid_files = 0;
  std::int64_t invalid_files = 0;
};

CorpusResult analyze_corpus(const std::vector<SubmissionMeta>& metas,
                            const AnalyzeOptions& options);

}  // namespace condlint
