#include "core/analysis.hpp"

#include <algorithm>

#include "core/detect.hpp"
#include "core/parser.hpp"
#include "core/suggest.hpp"

namespace condlint {

FileCheck check_source(std::string_view bytes, std::string path,
                       const CheckOptions& options) {
  FileCheck out;
  out.module = parse_module(bytes, std::move(path));
  if (!out.module.valid()) return out;

  std::vector<detect::Hit> hits = detect::run_rules(out.module);
  for (auto& hit : hits) {
    if (options.suggestions) {
      hit.diag.suggestion = suggest_fix(hit, out.module);
    }
    if (options.only &&
        std::find(options.only->begin(), options.only->end(), hit.diag.kind) ==
            options.only->end()) {
      continue;
    }
    out.diagnostics.push_back(std::move(hit.diag));
  }
  std::sort(out.diagnostics.begin(), out.diagnostics.end(), diagnostic_less);
  return out;
}

}  // namespace condlint
