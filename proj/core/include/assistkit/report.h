// JSON and text renderings of analysis and evaluation results. Object keys
// are sorted, so equal results serialize to identical bytes.

#ifndef ASSISTKIT_REPORT_H_
#define ASSISTKIT_REPORT_H_

#include <string>

#include "assistkit/eval.h"
#include "assistkit/pipeline.h"

namespace assistkit {

struct ReportOptions {
  // Timings are the only nondeterministic part of a report.
  bool include_timing = true;
  int indent = 2;
};

std::string AnalysisReportJson(const AnalysisResult& result, const ReportOptions& options = {});
std::string EvalReportJson(const EvalResult& result, const ReportOptions& options = {});

// One line per abstract query, grouped by execution point.
std::string RenderQueries(const AnalysisResult& result);

}  // namespace assistkit

#endif  // ASSISTKIT_REPORT_H_
