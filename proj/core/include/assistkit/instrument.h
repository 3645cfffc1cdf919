// Sanitizer placement and source rewriting.
//
// For every placeholder, the flow graph is followed forward from its
// InitAnyString node to the first concatenation on each path; the operand
// of that concatenation which carries the input is wrapped in a sanitizer
// call. An input that reaches executeQuery without any concatenation is
// sanitized at the executeQuery argument instead.

#ifndef ASSISTKIT_INSTRUMENT_H_
#define ASSISTKIT_INSTRUMENT_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "assistkit/flow_graph.h"
#include "assistkit/sql.h"

namespace assistkit {

enum class SiteKind { kConcatExpr, kConcatAssign, kExecuteQuery };
enum class OperandSide { kLeft, kRight, kBoth, kWhole };

std::string_view ToString(SiteKind kind);
std::string_view ToString(OperandSide side);

struct InsertionPoint {
  NodeId placeholder{};
  // The first Concat node, or the execution point's node for kExecuteQuery.
  NodeId site_node{};
  SiteKind site = SiteKind::kConcatExpr;
  // '+' operator, '+=' statement or executeQuery statement.
  SourceLocation loc;
  OperandSide side = OperandSide::kRight;
};

std::vector<InsertionPoint> LocateInsertionPoints(const FlowGraph& graph,
                                                  const std::vector<NodeId>& placeholders);

enum class ConflictPolicy { kNumeric, kError };
enum class UnresolvablePolicy { kString, kSkip };

struct PlanOptions {
  ConflictPolicy conflict = ConflictPolicy::kError;
  UnresolvablePolicy unresolvable = UnresolvablePolicy::kString;
};

struct PlanEntry {
  InsertionPoint point;
  SanitizerKind kind = SanitizerKind::kString;
};

struct Diagnostic {
  enum class Severity { kWarning, kError };
  Severity severity = Severity::kWarning;
  NodeId placeholder{};
  std::string placeholder_name;
  std::string detail;
  std::string action;
  SourceLocation loc;
};

std::string_view ToString(Diagnostic::Severity severity);

struct SanitizationPlan {
  std::vector<PlanEntry> entries;
  std::vector<Diagnostic> diagnostics;
  // Set when a conflict was reported under ConflictPolicy::kError.
  bool failed = false;
};

SanitizationPlan BuildPlan(const FlowGraph& graph, const std::vector<InsertionPoint>& points,
                           const std::vector<PlaceholderResolution>& resolutions,
                           const PlanOptions& options = {});

class InstrumentError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Applies the plan. Operands already wrapped in the same sanitizer are left
/// alone, so applying a plan twice is a no-op. A plan entry that matches no
/// site in the program throws InstrumentError.
Program InstrumentProgram(const Program& program, const SanitizationPlan& plan);

/// Pairs (placeholder, execution point) where the input can reach the
/// execution point without passing through a sanitizer.
std::vector<std::pair<NodeId, NodeId>> FindUnsanitizedFlows(const FlowGraph& graph,
                                                            const std::vector<NodeId>& placeholders);

}  // namespace assistkit

#endif  // ASSISTKIT_INSTRUMENT_H_
