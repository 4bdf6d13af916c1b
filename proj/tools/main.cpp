// condlint command line tool. Everything goes through the shared-library C
// API; the only logic living here is argument handling, file I/O, and the
// human-readable text renderer.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "condlint.h"

#if defined(_WIN32)
#include <io.h>
#define CL_ISATTY _isatty
#define CL_FILENO _fileno
#else
#include <unistd.h>
#define CL_ISATTY isatty
#define CL_FILENO fileno
#endif

namespace fs = std::filesystem;

namespace {

// Exit codes, in precedence order when several apply: usage/I-O beats parse
// errors beats findings.
constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

int resolve_exit(bool usage, bool parse, bool findings) {
  if (usage) return kExitUsage;
  if (parse) return kExitParse;
  if (findings) return kExitFindings;
  return kExitClean;
}

bool stdout_is_tty() { return CL_ISATTY(CL_FILENO(stdout)) != 0; }

bool color_enabled() {
  return stdout_is_tty() && std::getenv("NO_COLOR") == nullptr;
}

struct Palette {
  const char* bold = "";
  const char* id = "";
  const char* dim = "";
  const char* off = "";
};

Palette palette() {
  Palette p;
  if (color_enabled()) {
    p.bold = "\x1b[1m";
    p.id = "\x1b[35m";
    p.dim = "\x1b[2m";
    p.off = "\x1b[0m";
  }
  return p;
}

std::optional<std::string> format_token(const std::string& name) {
  if (name == "text" || name == "json" || name == "csv" ||
      name == "markdown")
    return name;
  if (name == "md") return std::string("markdown");
  return std::nullopt;
}

std::string valid_pattern_ids() {
  std::string out;
  for (int32_t i = 0; i < cl_pattern_count(); ++i) {
    const char* id = nullptr;
    cl_pattern_id(i, &id);
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

// The optional condlint.toml carries course-level defaults. Only the keys
// the CLI understands are read: layout, patterns, format.
struct Config {
  std::optional<std::string> layout;
  std::optional<std::string> patterns;
  std::optional<std::string> format;
};

std::string strip(std::string s) {
  const char* ws = " \t\r";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

bool load_config(const std::string& path, Config& cfg, bool explicit_path) {
  std::ifstream in(path);
  if (!in) {
    if (explicit_path) {
      std::cerr << "condlint: cannot read config file: " << path << "\n";
      return false;
    }
    return true;  // no condlint.toml in the working directory is fine
  }
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = strip(line.substr(0, eq));
    const std::string value = unquote(strip(line.substr(eq + 1)));
    if (key == "layout") {
      cfg.layout = value;
    } else if (key == "patterns") {
      cfg.patterns = value;
    } else if (key == "format") {
      cfg.format = value;
    } else {
      std::cerr << "condlint: config key '" << key << "' ignored\n";
    }
  }
  return true;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

std::string read_stdin() {
  std::ostringstream ss;
  ss << std::cin.rdbuf();
  return ss.str();
}

void print_text_diagnostics(const cl_result* res, const Palette& p) {
  int32_t n = 0;
  cl_result_count(res, &n);
  for (int32_t i = 0; i < n; ++i) {
    const char* file = nullptr;
    const char* id = nullptr;
    const char* message = nullptr;
    cl_span span{};
    cl_result_file(res, i, &file);
    cl_result_pattern(res, i, &id);
    cl_result_message(res, i, &message);
    cl_result_span(res, i, &span);
    std::cout << p.bold << file << ":" << span.line_start << ":"
              << span.col_start << p.off << ": " << p.id << id << p.off
              << ": " << message << "\n";
    const char* replacement = nullptr;
    const char* rationale = nullptr;
    cl_result_suggestion(res, i, &replacement, &rationale);
    if (replacement != nullptr) {
      std::cout << "  " << p.dim << "fix: " << rationale << p.off << "\n";
      std::string text = replacement;
      std::size_t pos = 0;
      while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::cout << "    " << p.dim << "| " << p.off
                  << text.substr(pos, nl - pos) << "\n";
        pos = nl + 1;
      }
    }
  }
}

// ---- check ----

struct CheckArgs {
  std::vector<std::string> paths;
  std::string format;
  std::string patterns;
  bool no_suggestions = false;
  std::string config_path;
};

int run_check(const CheckArgs& args, const Config& cfg) {
  const std::string patterns =
      !args.patterns.empty() ? args.patterns : cfg.patterns.value_or("");
  std::string format = !args.format.empty()
                           ? args.format
                           : cfg.format.value_or(stdout_is_tty() ? "text"
                                                                 : "json");
  const auto fmt = format_token(format);
  if (!fmt) {
    std::cerr << "condlint: unknown format: " << format << "\n";
    return kExitUsage;
  }

  if (!patterns.empty() && cl_patterns_validate(patterns.c_str()) != CL_OK) {
    std::cerr << "condlint: " << cl_last_error()
              << "\nvalid patterns: " << valid_pattern_ids() << "\n";
    return kExitUsage;
  }

  bool usage_error = false;
  bool parse_error = false;
  int64_t findings = 0;
  const Palette p = palette();

  cl_report* report = nullptr;
  cl_report_new(&report);

  for (const std::string& path : args.paths) {
    std::string bytes;
    std::string display = path;
    if (path == "-") {
      bytes = read_stdin();
      display = "<stdin>";
    } else {
      std::error_code ec;
      if (fs::is_directory(path, ec)) {
        std::cerr << "condlint: " << path << " is a directory\n";
        usage_error = true;
        continue;
      }
      if (!read_file(path, bytes)) {
        std::cerr << "condlint: cannot read file: " << path << "\n";
        usage_error = true;
        continue;
      }
    }

    cl_module* mod = nullptr;
    if (cl_module_parse(bytes.data(), bytes.size(), display.c_str(), &mod) !=
        CL_OK) {
      std::cerr << "condlint: " << cl_last_error() << "\n";
      usage_error = true;
      continue;
    }
    int32_t errors = 0;
    cl_module_error_count(mod, &errors);
    if (errors > 0) {
      for (int32_t i = 0; i < errors; ++i) {
        const char* message = nullptr;
        cl_span span{};
        cl_module_error(mod, i, &message, &span);
        std::cerr << display << ":" << span.line_start << ":"
                  << span.col_start << ": parse error: " << message << "\n";
      }
      parse_error = true;
      cl_module_free(mod);
      continue;
    }

    cl_result* res = nullptr;
    const cl_status st = cl_module_check(
        mod, patterns.empty() ? nullptr : patterns.c_str(),
        args.no_suggestions ? 0 : 1, &res);
    if (st != CL_OK) {
      std::cerr << "condlint: " << cl_last_error() << "\n";
      usage_error = true;
      cl_module_free(mod);
      continue;
    }
    int32_t n = 0;
    cl_result_count(res, &n);
    findings += n;
    if (*fmt == "text") {
      print_text_diagnostics(res, p);
    } else {
      cl_report_add(report, res);
    }
    cl_result_free(res);
    cl_module_free(mod);
  }

  if (*fmt == "text") {
    if (findings == 0 && !usage_error && !parse_error) {
      std::cout << "no findings\n";
    } else if (findings > 0) {
      std::cout << findings << (findings == 1 ? " finding\n" : " findings\n");
    }
  } else {
    char* rendered = nullptr;
    if (cl_report_render(report, fmt->c_str(), &rendered) == CL_OK) {
      std::cout << rendered;
      cl_string_free(rendered);
    } else {
      std::cerr << "condlint: " << cl_last_error() << "\n";
      usage_error = true;
    }
  }
  cl_report_free(report);
  return resolve_exit(usage_error, parse_error, findings > 0);
}

// ---- corpus ----

struct CorpusArgs {
  std::string root;
  std::string layout;
  std::string format;
  std::string patterns;
  std::string out_dir;
  int workers = 0;
  bool skip_invalid = true;
  bool by_submission = false;
  std::string config_path;
};

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return out.good();
}

int run_corpus(const CorpusArgs& args, const Config& cfg) {
  const std::string layout = !args.layout.empty()
                                 ? args.layout
                                 : cfg.layout.value_or("{group}/{student}/*.py");
  const std::string patterns =
      !args.patterns.empty() ? args.patterns : cfg.patterns.value_or("");
  std::string format = !args.format.empty()
                           ? args.format
                           : cfg.format.value_or(stdout_is_tty() ? "text"
                                                                 : "json");
  const auto fmt = format_token(format);
  if (!fmt) {
    std::cerr << "condlint: unknown format: " << format << "\n";
    return kExitUsage;
  }
  // The corpus reports come out of the library pre-formatted; the closest
  // terminal rendering is the markdown one.
  const std::string render_fmt = *fmt == "text" ? "markdown" : *fmt;

  cl_corpus_options options{};
  options.layout = layout.c_str();
  options.workers = args.workers;
  options.prevalence_by_submission = args.by_submission ? 1 : 0;
  options.patterns_csv = patterns.empty() ? nullptr : patterns.c_str();
  options.with_suggestions = 0;

  cl_corpus* corpus = nullptr;
  const cl_status st = cl_corpus_run(args.root.c_str(), &options, &corpus);
  if (st != CL_OK) {
    std::cerr << "condlint: " << cl_last_error() << "\n";
    if (st == CL_E_UNKNOWN_PATTERN) {
      std::cerr << "valid patterns: " << valid_pattern_ids() << "\n";
    }
    return kExitUsage;
  }

  int32_t notices = 0;
  cl_corpus_notice_count(corpus, &notices);
  for (int32_t i = 0; i < notices; ++i) {
    const char* text = nullptr;
    cl_corpus_notice(corpus, i, &text);
    std::cerr << "condlint: " << text << "\n";
  }

  bool usage_error = false;
  if (args.out_dir.empty()) {
    char* rendered = nullptr;
    if (cl_corpus_render(corpus, "all", render_fmt.c_str(), &rendered) ==
        CL_OK) {
      std::cout << rendered;
      cl_string_free(rendered);
    } else {
      std::cerr << "condlint: " << cl_last_error() << "\n";
      usage_error = true;
    }
  } else {
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) {
      std::cerr << "condlint: cannot create " << args.out_dir << ": "
                << ec.message() << "\n";
      usage_error = true;
    } else {
      const std::string ext = render_fmt == "markdown" ? "md" : render_fmt;
      const char* sections[] = {"summary", "prevalence", "students", "totals",
                                "diagnostics"};
      for (const char* section : sections) {
        char* rendered = nullptr;
        if (cl_corpus_render(corpus, section, render_fmt.c_str(),
                             &rendered) != CL_OK) {
          std::cerr << "condlint: " << cl_last_error() << "\n";
          usage_error = true;
          break;
        }
        const fs::path file =
            fs::path(args.out_dir) / (std::string(section) + "." + ext);
        const bool ok = write_file(file, rendered);
        cl_string_free(rendered);
        if (!ok) {
          std::cerr << "condlint: cannot write " << file.string() << "\n";
          usage_error = true;
          break;
        }
        std::cout << "wrote " << file.string() << "\n";
      }
      char* stats = nullptr;
      if (!usage_error &&
          cl_corpus_render(corpus, "stats", "csv", &stats) == CL_OK) {
        const fs::path file = fs::path(args.out_dir) / "stats.csv";
        if (write_file(file, stats)) {
          std::cout << "wrote " << file.string() << "\n";
        } else {
          std::cerr << "condlint: cannot write " << file.string() << "\n";
          usage_error = true;
        }
        cl_string_free(stats);
      }
    }
  }

  int64_t total = 0, valid = 0, invalid = 0;
  cl_corpus_file_counts(corpus, &total, &valid, &invalid);
  int64_t diagnostics = 0;
  cl_corpus_diagnostic_count(corpus, &diagnostics);
  cl_corpus_free(corpus);

  const bool parse_error = !args.skip_invalid && invalid > 0;
  return resolve_exit(usage_error, parse_error, diagnostics > 0);
}

// ---- patterns ----

int run_patterns(const std::string& format_flag) {
  const std::string format =
      !format_flag.empty() ? format_flag : (stdout_is_tty() ? "text" : "json");
  if (format == "json") {
    std::cout << "[\n";
    for (int32_t i = 0; i < cl_pattern_count(); ++i) {
      const char* id = nullptr;
      const char* title = nullptr;
      cl_pattern_id(i, &id);
      cl_pattern_title(i, &title);
      std::cout << "  {\"id\": \"" << id << "\", \"title\": \"" << title
                << "\"}" << (i + 1 < cl_pattern_count() ? "," : "") << "\n";
    }
    std::cout << "]\n";
  } else {
    for (int32_t i = 0; i < cl_pattern_count(); ++i) {
      const char* id = nullptr;
      const char* title = nullptr;
      cl_pattern_id(i, &id);
      cl_pattern_title(i, &title);
      std::printf("%-38s %s\n", id, title);
    }
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional anti-pattern checker for Python source"};
  app.set_version_flag("--version", cl_version());
  app.require_subcommand(1);

  CheckArgs check;
  auto* cmd_check = app.add_subcommand("check", "analyze files");
  cmd_check->add_option("paths", check.paths, "files to analyze ('-' = stdin)")
      ->required();
  cmd_check->add_option("--format,-f", check.format,
                        "text, json, csv, or markdown");
  cmd_check->add_option("--patterns,-p", check.patterns,
                        "comma-separated pattern ids to report");
  cmd_check->add_flag("--no-suggestions", check.no_suggestions,
                      "omit rewrite suggestions");
  cmd_check->add_option("--config", check.config_path,
                        "config file (default: ./condlint.toml)");

  CorpusArgs corpus;
  auto* cmd_corpus =
      app.add_subcommand("corpus", "analyze a tree of submissions");
  cmd_corpus->add_option("root", corpus.root, "corpus root directory")
      ->required();
  cmd_corpus->add_option("--layout,-l", corpus.layout,
                         "path pattern with {group} and {student} "
                         "(default {group}/{student}/*.py)");
  cmd_corpus->add_option("--format,-f", corpus.format,
                         "text, json, csv, or markdown");
  cmd_corpus->add_option("--patterns,-p", corpus.patterns,
                         "comma-separated pattern ids to report");
  cmd_corpus->add_option("--out,-o", corpus.out_dir,
                         "write report sections into this directory");
  cmd_corpus->add_option("--workers,-j", corpus.workers,
                         "worker threads (0 = automatic)");
  cmd_corpus->add_flag("--skip-invalid,!--no-skip-invalid",
                       corpus.skip_invalid,
                       "ignore unparseable files in the exit code (default)");
  cmd_corpus->add_flag("--prevalence-by-submission", corpus.by_submission,
                       "prevalence as % of flagged submissions instead of "
                       "% of occurrences");
  cmd_corpus->add_option("--config", corpus.config_path,
                         "config file (default: ./condlint.toml)");

  std::string patterns_format;
  auto* cmd_patterns =
      app.add_subcommand("patterns", "list the recognized patterns");
  cmd_patterns->add_option("--format,-f", patterns_format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitClean : kExitUsage;
  }

  if (cmd_check->parsed()) {
    Config cfg;
    if (!load_config(check.config_path.empty() ? "condlint.toml"
                                               : check.config_path,
                     cfg, !check.config_path.empty()))
      return kExitUsage;
    return run_check(check, cfg);
  }
  if (cmd_corpus->parsed()) {
    Config cfg;
    if (!load_config(corpus.config_path.empty() ? "condlint.toml"
                                                : corpus.config_path,
                     cfg, !corpus.config_path.empty()))
      return kExitUsage;
    return run_corpus(corpus, cfg);
  }
  return run_patterns(patterns_format);
}
