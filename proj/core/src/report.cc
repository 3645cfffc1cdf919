#include "assistkit/report.h"

#include <json.hpp>

namespace assistkit {

namespace {

using nlohmann::json;

json Location(const SourceLocation& loc) {
  return json{{"file", loc.file}, {"line", loc.line}, {"column", loc.column}};
}

json Placeholder(const FlowGraph& graph, NodeId id) {
  return json{{"node", Index(id)}, {"name", graph.DisplayName(id)}, {"param", graph.node(id).text}};
}

json Segments(const FlowGraph& graph, const AbstractQuery& q) {
  json out = json::array();
  for (const Segment& s : q.segments()) {
    if (const auto* lit = std::get_if<LiteralSegment>(&s)) {
      out.push_back(json{{"literal", lit->text}});
    } else {
      out.push_back(Placeholder(graph, std::get<PlaceholderSegment>(s).node));
    }
  }
  return out;
}

json Outcome(const FlowGraph& graph, const ParseOutcome& o) {
  json j{{"rendered", o.query.Render(graph)}, {"segments", Segments(graph, o.query)},
         {"valid", o.valid}};
  if (o.valid) {
    json bindings = json::array();
    for (const Binding& b : o.bindings) {
      bindings.push_back(json{{"placeholder", graph.DisplayName(b.placeholder)},
                              {"table", b.table},
                              {"attribute", b.attribute},
                              {"domain", ToString(b.domain)}});
    }
    j["bindings"] = std::move(bindings);
  } else {
    j["failing_segment"] = o.failing_segment;
    j["message"] = o.message;
  }
  return j;
}

json Resolution(const FlowGraph& graph, const PlaceholderResolution& r) {
  json j = Placeholder(graph, r.placeholder);
  j["status"] = ToString(r.status);
  switch (r.status) {
    case PlaceholderResolution::Status::kKind:
      j["sanitizer"] = ToString(r.kind);
      break;
    case PlaceholderResolution::Status::kConflict: {
      json kinds = json::array();
      for (SanitizerKind k : r.conflicting) kinds.push_back(ToString(k));
      j["conflicting"] = std::move(kinds);
      break;
    }
    case PlaceholderResolution::Status::kUnresolvable:
      j["reason"] = r.reason;
      break;
  }
  return j;
}

json Diagnostics(const FlowGraph& graph, const SanitizationPlan& plan) {
  json out = json::array();
  for (const Diagnostic& d : plan.diagnostics) {
    out.push_back(json{{"severity", ToString(d.severity)},
                       {"placeholder", d.placeholder_name.empty() ? graph.DisplayName(d.placeholder)
                                                                  : d.placeholder_name},
                       {"detail", d.detail},
                       {"action", d.action},
                       {"location", Location(d.loc)}});
  }
  return out;
}

json Plan(const FlowGraph& graph, const SanitizationPlan& plan) {
  json entries = json::array();
  for (const PlanEntry& e : plan.entries) {
    entries.push_back(json{{"placeholder", graph.DisplayName(e.point.placeholder)},
                           {"site", ToString(e.point.site)},
                           {"site_node", Index(e.point.site_node)},
                           {"side", ToString(e.point.side)},
                           {"location", Location(e.point.loc)},
                           {"sanitizer", ToString(e.kind)}});
  }
  return json{{"entries", std::move(entries)}, {"failed", plan.failed}};
}

}  // namespace

std::string AnalysisReportJson(const AnalysisResult& result, const ReportOptions& options) {
  const FlowGraph& graph = result.graph;
  json points = json::array();
  for (const ExecPointAnalysis& e : result.exec_points) {
    json queries = json::array();
    for (const ParseOutcome& o : e.outcomes) queries.push_back(Outcome(graph, o));
    points.push_back(json{{"node", Index(e.point.node)},
                          {"location", Location(e.point.loc)},
                          {"truncated", e.truncated},
                          {"queries", std::move(queries)}});
  }
  json resolutions = json::array();
  for (const PlaceholderResolution& r : result.resolutions) resolutions.push_back(Resolution(graph, r));
  json dead = json::array();
  for (NodeId id : graph.DeadInputs()) dead.push_back(Placeholder(graph, id));

  json report{{"program", result.program_id},
              {"execution_points", std::move(points)},
              {"resolutions", std::move(resolutions)},
              {"plan", Plan(graph, result.plan)},
              {"diagnostics", Diagnostics(graph, result.plan)},
              {"dead_inputs", std::move(dead)},
              {"summary", json{{"flow_nodes", graph.size()},
                               {"execution_points", result.exec_points.size()},
                               {"queries", result.QueryCount()},
                               {"invalid_queries", result.InvalidQueryCount()}}}};
  if (options.include_timing) {
    const PhaseTimings& t = result.timings;
    report["timing_ms"] = json{{"flow_graph", t.flow_graph_ms},
                               {"query_fragments", t.query_fragments_ms},
                               {"parse", t.parse_ms},
                               {"plan", t.plan_ms},
                               {"instrument", t.instrument_ms}};
  }
  return report.dump(options.indent) + "\n";
}

std::string EvalReportJson(const EvalResult& result, const ReportOptions& options) {
  json inputs = json::array();
  for (const InputOutcome& o : result.outcomes) {
    json params = json::object();
    for (const auto& [k, v] : o.input.params) params[k] = v;
    json j{{"id", o.input.Id()},
           {"line", o.input.line},
           {"label", ToString(o.input.label)},
           {"params", std::move(params)},
           {"classification", ToString(o.classification)},
           {"original_compromised", o.original_compromised},
           {"instrumented_compromised", o.instrumented_compromised},
           {"original_queries", o.original_queries},
           {"instrumented_queries", o.instrumented_queries}};
    if (o.input.label == InputLabel::kLegit) j["structurally_modified"] = o.structurally_modified;
    if (!o.original_error.empty()) j["original_error"] = o.original_error;
    if (!o.instrumented_error.empty()) j["instrumented_error"] = o.instrumented_error;
    inputs.push_back(std::move(j));
  }
  const EvalSummary& s = result.summary;
  json summary{{"inputs", s.inputs},
               {"attack_neutralized", s.attack_neutralized},
               {"attack_unchanged", s.attack_unchanged},
               {"legit_unchanged", s.legit_unchanged},
               {"legit_modified", s.legit_modified},
               {"legit_modified_structural", s.legit_modified_structural},
               {"unsuccessful_attacks", s.unsuccessful_attacks},
               {"successful_attacks", s.successful_attacks},
               {"false_positives", s.false_positives()},
               {"false_positives_structural", s.false_positives_structural()},
               {"false_negatives", s.false_negatives()},
               {"run_errors", s.run_errors}};
  json report{{"program", result.program_id}, {"inputs", std::move(inputs)},
              {"summary", std::move(summary)}};
  return report.dump(options.indent) + "\n";
}

std::string RenderQueries(const AnalysisResult& result) {
  std::string out;
  for (const ExecPointAnalysis& e : result.exec_points) {
    out += "executeQuery at " + ToString(e.point.loc) + (e.truncated ? " (truncated)" : "") + "\n";
    for (const ParseOutcome& o : e.outcomes) {
      out += o.valid ? "  valid    " : "  invalid  ";
      out += o.query.Render(result.graph);
      if (!o.valid) out += "    -- " + o.message;
      out += "\n";
    }
  }
  for (const PlaceholderResolution& r : result.resolutions) {
    out += result.graph.DisplayName(r.placeholder) + ": " + std::string(ToString(r.status));
    if (r.status == PlaceholderResolution::Status::kKind) out += " " + std::string(ToString(r.kind));
    out += "\n";
  }
  return out;
}

}  // namespace assistkit
