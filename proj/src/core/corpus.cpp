#include "core/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace condlint {
namespace {

std::vector<std::string> split_segments(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t slash = s.find('/', pos);
    if (slash == std::string::npos) slash = s.size();
    parts.push_back(s.substr(pos, slash - pos));
    pos = slash + 1;
  }
  while (!parts.empty() && parts.front().empty()) parts.erase(parts.begin());
  while (!parts.empty() && parts.back().empty()) parts.pop_back();
  return parts;
}

const std::string kRegexSpecial = R"(\^$.|+()[]{})";

}  // namespace

struct CompiledSegment {
  bool any_depth = false;
  std::regex re;
  int group_capture = 0;
  int student_capture = 0;
};

LayoutPattern LayoutPattern::compile(const std::string& pattern) {
  LayoutPattern lp;
  lp.pattern_ = pattern;
  int groups_seen = 0, students_seen = 0;

  for (const std::string& seg : split_segments(pattern)) {
    Segment out;
    if (seg == "**") {
      out.any_depth = true;
      lp.segments_.push_back(std::move(out));
      continue;
    }
    std::string re;
    int captures = 0;
    for (std::size_t i = 0; i < seg.size();) {
      if (seg.compare(i, 7, "{group}") == 0) {
        re += "([^/]+)";
        out.group_capture = ++captures;
        ++groups_seen;
        i += 7;
      } else if (seg.compare(i, 9, "{student}") == 0) {
        re += "([^/]+)";
        out.student_capture = ++captures;
        ++students_seen;
        i += 9;
      } else if (seg[i] == '*') {
        re += "[^/]*";
        ++i;
      } else if (seg[i] == '?') {
        re += "[^/]";
        ++i;
      } else {
        if (kRegexSpecial.find(seg[i]) != std::string::npos) re += '\\';
        re += seg[i];
        ++i;
      }
    }
    out.regex_text = re;
    lp.segments_.push_back(std::move(out));
  }

  if (groups_seen != 1 || students_seen != 1) {
    throw std::invalid_argument(
        "layout must contain exactly one {group} and one {student}: " +
        pattern);
  }
  if (lp.segments_.empty()) {
    throw std::invalid_argument("layout is empty");
  }
  return lp;
}

bool LayoutPattern::match(const std::string& rel_path, std::string& group,
                          std::string& student) const {
  const std::vector<std::string> parts = split_segments(rel_path);
  std::vector<CompiledSegment> segs;
  segs.reserve(segments_.size());
  for (const Segment& s : segments_) {
    CompiledSegment c;
    c.any_depth = s.any_depth;
    if (!s.any_depth) c.re = std::regex(s.regex_text);
    c.group_capture = s.group_capture;
    c.student_capture = s.student_capture;
    segs.push_back(std::move(c));
  }

  std::string g, st;
  auto match_from = [&](auto&& self, std::size_t si, std::size_t pi) -> bool {
    if (si == segs.size()) return pi == parts.size();
    const CompiledSegment& seg = segs[si];
    if (seg.any_depth) {
      for (std::size_t skip = 0; pi + skip <= parts.size(); ++skip) {
        if (self(self, si + 1, pi + skip)) return true;
      }
      return false;
    }
    if (pi >= parts.size()) return false;
    std::smatch m;
    if (!std::regex_match(parts[pi], m, seg.re)) return false;
    if (seg.group_capture) g = m[static_cast<std::size_t>(seg.group_capture)];
    if (seg.student_capture) {
      st = m[static_cast<std::size_t>(seg.student_capture)];
    }
    return self(self, si + 1, pi + 1);
  };
  if (!match_from(match_from, 0, 0)) return false;
  if (g.empty() || st.empty()) return false;
  group = g;
  student = st;
  return true;
}

ScanResult scan_corpus(const std::filesystem::path& root,
                       const LayoutPattern& layout) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(root, ec) || ec) {
    throw std::runtime_error("corpus root does not exist: " + root.string());
  }
  if (!fs::is_directory(root, ec) || ec) {
    throw std::runtime_error("corpus root is not a directory: " +
                             root.string());
  }

  ScanResult result;
  fs::recursive_directory_iterator it(root, ec), end;
  if (ec) {
    throw std::runtime_error("cannot read corpus root: " + root.string() +
                             ": " + ec.message());
  }
  for (; it != end; it.increment(ec)) {
    if (ec) {
      throw std::runtime_error("error walking corpus: " + ec.message());
    }
    if (!it->is_regular_file(ec) || ec) {
      ec.clear();
      continue;
    }
    const fs::path p = it->path();
    const std::string rel = p.lexically_relative(root).generic_string();
    SubmissionMeta meta;
    if (layout.match(rel, meta.group_id, meta.student_id)) {
      meta.path = p;
      meta.rel_path = rel;
      result.metas.push_back(std::move(meta));
    } else {
      result.notices.push_back("skipped (no layout match): " + rel);
    }
  }
  std::sort(result.metas.begin(), result.metas.end(),
            [](const SubmissionMeta& a, const SubmissionMeta& b) {
              return a.rel_path < b.rel_path;
            });
  std::sort(result.notices.begin(), result.notices.end());
  return result;
}

void GroupAccum::merge(const GroupAccum& other) {
  for (int k = 0; k < kPatternCount; ++k) {
    count[static_cast<std::size_t>(k)] +=
        other.count[static_cast<std::size_t>(k)];
    submissions_with[static_cast<std::size_t>(k)] +=
        other.submissions_with[static_cast<std::size_t>(k)];
    students[static_cast<std::size_t>(k)].insert(
        other.students[static_cast<std::size_t>(k)].begin(),
        other.students[static_cast<std::size_t>(k)].end());
  }
  all_students.insert(other.all_students.begin(), other.all_students.end());
  lloc += other.lloc;
  submissions += other.submissions;
}

void CorpusAccum::add(const FileOutcome& outcome) {
  if (!outcome.read_ok || !outcome.valid) return;
  GroupAccum& g = groups[outcome.meta.group_id];
  g.lloc += outcome.lloc;
  g.submissions += 1;
  g.all_students.insert(outcome.meta.student_id);
  std::array<bool, kPatternCount> present{};
  for (const Diagnostic& d : outcome.diagnostics) {
    const auto k = static_cast<std::size_t>(d.kind);
    g.count[k] += 1;
    present[k] = true;
  }
  for (int k = 0; k < kPatternCount; ++k) {
    if (present[static_cast<std::size_t>(k)]) {
      g.submissions_with[static_cast<std::size_t>(k)] += 1;
      g.students[static_cast<std::size_t>(k)].insert(outcome.meta.student_id);
    }
  }
}

void CorpusAccum::merge(const CorpusAccum& other) {
  for (const auto& [id, acc] : other.groups) {
    groups[id].merge(acc);
  }
}

int CorpusStats::group_index(const std::string& id) const {
  const auto it = std::lower_bound(groups.begin(), groups.end(), id);
  if (it == groups.end() || *it != id) return -1;
  return static_cast<int>(it - groups.begin());
}

double CorpusStats::prevalence(int group, int pattern) const {
  const auto g = static_cast<std::size_t>(group);
  const auto& basis = prevalence_by_submission ? submissions_with : count;
  std::int64_t denom = 0;
  for (int k = 0; k < kPatternCount; ++k) {
    denom += basis[g][static_cast<std::size_t>(k)];
  }
  if (denom == 0) return 0.0;
  return 100.0 * static_cast<double>(basis[g][static_cast<std::size_t>(pattern)]) /
         static_cast<double>(denom);
}

double CorpusStats::prevalence_total(int pattern) const {
  const auto& basis = prevalence_by_submission ? submissions_with : count;
  std::int64_t denom = 0, num = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int k = 0; k < kPatternCount; ++k) {
      denom += basis[g][static_cast<std::size_t>(k)];
    }
    num += basis[g][static_cast<std::size_t>(pattern)];
  }
  if (denom == 0) return 0.0;
  return 100.0 * static_cast<double>(num) / static_cast<double>(denom);
}

double CorpusStats::rate_per_lloc(int group, int pattern) const {
  const auto g = static_cast<std::size_t>(group);
  if (lloc[g] == 0) return 0.0;
  return static_cast<double>(count[g][static_cast<std::size_t>(pattern)]) /
         static_cast<double>(lloc[g]);
}

double CorpusStats::group_rate(int group) const {
  const auto g = static_cast<std::size_t>(group);
  if (lloc[g] == 0) return 0.0;
  std::int64_t total = 0;
  for (int k = 0; k < kPatternCount; ++k) {
    total += count[g][static_cast<std::size_t>(k)];
  }
  return static_cast<double>(total) / static_cast<double>(lloc[g]);
}

CellStats cell_stats(const std::vector<std::int64_t>& cells) {
  CellStats cs;
  if (cells.empty()) return cs;
  const double n = static_cast<double>(cells.size());
  double sum = 0;
  for (auto v : cells) sum += static_cast<double>(v);
  cs.mean = sum / n;
  double var = 0;
  for (auto v : cells) {
    const double d = static_cast<double>(v) - cs.mean;
    var += d * d;
  }
  var /= n;  // population variance
  cs.sd = std::sqrt(var);
  cs.threshold = cs.mean + 2.0 * cs.sd;
  return cs;
}

CorpusStats finalize_stats(const CorpusAccum& accum,
                           bool prevalence_by_submission) {
  CorpusStats s;
  s.prevalence_by_submission = prevalence_by_submission;
  std::array<std::set<std::string>, kPatternCount> union_students;

  for (const auto& [id, acc] : accum.groups) {
    s.groups.push_back(id);
    s.count.push_back(acc.count);
    s.submissions_with.push_back(acc.submissions_with);
    std::array<std::int64_t, kPatternCount> st{};
    for (int k = 0; k < kPatternCount; ++k) {
      const auto ki = static_cast<std::size_t>(k);
      st[ki] = static_cast<std::int64_t>(acc.students[ki].size());
      union_students[ki].insert(acc.students[ki].begin(),
                                acc.students[ki].end());
      s.total_count[ki] += acc.count[ki];
    }
    s.students.push_back(st);
    s.lloc.push_back(acc.lloc);
    s.submissions.push_back(acc.submissions);
    s.total_lloc += acc.lloc;
  }
  for (int k = 0; k < kPatternCount; ++k) {
    const auto ki = static_cast<std::size_t>(k);
    s.unique_students_total[ki] =
        static_cast<std::int64_t>(union_students[ki].size());
    s.total_diagnostics += s.total_count[ki];
  }

  std::vector<std::int64_t> flat;
  flat.reserve(s.groups.size() * kPatternCount);
  for (const auto& row : s.students) {
    flat.insert(flat.end(), row.begin(), row.end());
  }
  const CellStats cs = cell_stats(flat);
  s.mean_students = cs.mean;
  s.sd_students = cs.sd;
  s.threshold_2sd = cs.threshold;

  s.group_order.resize(s.groups.size());
  for (std::size_t i = 0; i < s.group_order.size(); ++i) {
    s.group_order[i] = static_cast<int>(i);
  }
  std::sort(s.group_order.begin(), s.group_order.end(), [&](int a, int b) {
    const auto ga = static_cast<std::size_t>(a);
    const auto gb = static_cast<std::size_t>(b);
    std::int64_t ca = 0, cb = 0;
    for (int k = 0; k < kPatternCount; ++k) {
      ca += s.count[ga][static_cast<std::size_t>(k)];
      cb += s.count[gb][static_cast<std::size_t>(k)];
    }
    // rate comparison via cross-multiplication; empty groups sink to the end
    const std::int64_t la = s.lloc[ga], lb = s.lloc[gb];
    if (la > 0 && lb > 0) {
      const auto lhs = ca * lb, rhs = cb * la;
      if (lhs != rhs) return lhs > rhs;
    } else if ((la > 0) != (lb > 0)) {
      return la > 0;
    }
    return s.groups[ga] < s.groups[gb];
  });

  s.pattern_order.resize(kPatternCount);
  for (int k = 0; k < kPatternCount; ++k) {
    s.pattern_order[static_cast<std::size_t>(k)] = k;
  }
  std::sort(s.pattern_order.begin(), s.pattern_order.end(), [&](int a, int b) {
    const auto ca = s.total_count[static_cast<std::size_t>(a)];
    const auto cb = s.total_count[static_cast<std::size_t>(b)];
    if (ca != cb) return ca > cb;
    return pattern_id(static_cast<PatternKind>(a)) <
           pattern_id(static_cast<PatternKind>(b));
  });
  return s;
}

CorpusResult analyze_corpus(const std::vector<SubmissionMeta>& metas,
                            const AnalyzeOptions& options) {
  CorpusResult result;
  result.files.resize(metas.size());

  int workers = options.workers;
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
  }
  if (workers > static_cast<int>(metas.size())) {
    workers = static_cast<int>(metas.size());
  }
  if (workers < 1) workers = 1;

  std::atomic<std::size_t> next{0};
  auto job = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= metas.size()) return;
      FileOutcome out;
      out.meta = metas[i];
      std::ifstream in(metas[i].path, std::ios::binary);
      if (!in) {
        out.read_ok = false;
        result.files[i] = std::move(out);
        continue;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      const std::string bytes = buf.str();
      FileCheck fc = check_source(bytes, metas[i].rel_path, options.check);
      out.valid = fc.module.valid();
      out.lloc = fc.module.lloc;
      out.diagnostics = std::move(fc.diagnostics);
      out.parse_errors = std::move(fc.module.parse_errors);
      result.files[i] = std::move(out);
    }
  };

  if (workers == 1) {
    job();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(job);
    for (auto& t : pool) t.join();
  }

  CorpusAccum accum;
  for (const FileOutcome& out : result.files) {
    if (!out.read_ok) {
      result.notices.push_back("skipped (unreadable): " + out.meta.rel_path);
      continue;
    }
    if (!out.valid) {
      result.invalid_files += 1;
      continue;
    }
    result.valid_files += 1;
    accum.add(out);
  }
  result.stats = finalize_stats(accum, options.prevalence_by_submission);
  return result;
}

}  // namespace condlint
