#include "assistkit/pipeline.h"

#include <chrono>
#include <utility>

namespace assistkit {

namespace {

class Stopwatch {
 public:
  double Lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

std::size_t AnalysisResult::QueryCount() const {
  std::size_t n = 0;
  for (const ExecPointAnalysis& e : exec_points) n += e.outcomes.size();
  return n;
}

std::size_t AnalysisResult::InvalidQueryCount() const {
  std::size_t n = 0;
  for (const ExecPointAnalysis& e : exec_points) {
    for (const ParseOutcome& o : e.outcomes) n += o.valid ? 0 : 1;
  }
  return n;
}

const PlaceholderResolution* AnalysisResult::ResolutionFor(NodeId placeholder) const {
  for (const PlaceholderResolution& r : resolutions) {
    if (r.placeholder == placeholder) return &r;
  }
  return nullptr;
}

AnalysisResult AnalyzeProgram(Program program, const Schema& schema, const PipelineOptions& options,
                              std::string program_id) {
  AnalysisResult result;
  result.program_id = std::move(program_id);
  result.program = std::move(program);
  Stopwatch clock;

  result.graph = BuildFlowGraph(result.program);
  result.timings.flow_graph_ms = clock.Lap();

  for (const ExecPoint& point : result.graph.exec_points()) {
    ExecPointAnalysis e;
    e.point = point;
    for (AbstractQuery& q : AbstractQueriesAt(result.graph, point.node, options.qfs, &e.truncated)) {
      ParseOutcome o;
      o.query = std::move(q);
      e.outcomes.push_back(std::move(o));
    }
    result.exec_points.push_back(std::move(e));
  }
  result.timings.query_fragments_ms = clock.Lap();

  std::vector<ParseOutcome> all;
  for (ExecPointAnalysis& e : result.exec_points) {
    for (ParseOutcome& o : e.outcomes) {
      o = ParseAbstractQuery(o.query, schema);
      all.push_back(o);
    }
  }
  result.resolutions = ResolvePlaceholders(all);
  result.timings.parse_ms = clock.Lap();

  result.insertion_points = LocateInsertionPoints(result.graph, result.graph.placeholders());
  result.plan = BuildPlan(result.graph, result.insertion_points, result.resolutions, options.plan);
  result.timings.plan_ms = clock.Lap();

  if (!result.plan.failed) result.instrumented = InstrumentProgram(result.program, result.plan);
  result.timings.instrument_ms = clock.Lap();
  return result;
}

}  // namespace assistkit
