// End-to-end analysis: flow graph, abstract queries, typing, plan and
// instrumented program.

#ifndef ASSISTKIT_PIPELINE_H_
#define ASSISTKIT_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "assistkit/flow_graph.h"
#include "assistkit/instrument.h"
#include "assistkit/query_fragments.h"
#include "assistkit/schema.h"
#include "assistkit/sql.h"

namespace assistkit {

struct PipelineOptions {
  QfsOptions qfs;
  PlanOptions plan;
};

struct ExecPointAnalysis {
  ExecPoint point;
  // One outcome per abstract query, sorted by rendered text.
  std::vector<ParseOutcome> outcomes;
  bool truncated = false;
};

// Wall-clock milliseconds from a monotonic clock.
struct PhaseTimings {
  double flow_graph_ms = 0;
  double query_fragments_ms = 0;
  double parse_ms = 0;
  double plan_ms = 0;
  double instrument_ms = 0;
};

struct AnalysisResult {
  std::string program_id;
  Program program;
  FlowGraph graph;
  std::vector<ExecPointAnalysis> exec_points;
  std::vector<PlaceholderResolution> resolutions;
  std::vector<InsertionPoint> insertion_points;
  SanitizationPlan plan;
  // Absent when the plan failed.
  std::optional<Program> instrumented;
  PhaseTimings timings;

  std::size_t QueryCount() const;
  std::size_t InvalidQueryCount() const;
  const PlaceholderResolution* ResolutionFor(NodeId placeholder) const;
};

/// Throws CrossProductOverflow in exact mode and AnalysisError for programs
/// the flow-graph builder rejects.
AnalysisResult AnalyzeProgram(Program program, const Schema& schema,
                              const PipelineOptions& options = {}, std::string program_id = {});

}  // namespace assistkit

#endif  // ASSISTKIT_PIPELINE_H_
