// String flow graph.
//
// Nodes are the string-producing program points of a QScript program:
// initializations (a literal or an external any_string value), assignments
// and concatenations. An edge p -> n means the value computed at p flows
// into n. Conditions are not string statements and contribute no nodes.

#ifndef ASSISTKIT_FLOW_GRAPH_H_
#define ASSISTKIT_FLOW_GRAPH_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "assistkit/ast.h"

namespace assistkit {

enum class NodeId : std::uint32_t {};

inline std::size_t Index(NodeId id) { return static_cast<std::size_t>(id); }
inline NodeId MakeNodeId(std::size_t index) { return static_cast<NodeId>(index); }

enum class FlowNodeKind { kInitLiteral, kInitAnyString, kAssign, kConcat };

std::string_view ToString(FlowNodeKind kind);

// Where an Assign or Concat node comes from in the source.
enum class NodeOrigin {
  kLiteral,        // InitLiteral: a string literal expression
  kGetParam,       // InitAnyString: a getParam(...) expression
  kDefinition,     // Assign: a var declaration or plain assignment
  kMerge,          // Assign: a variable use reached by several definitions
  kSanitize,       // Assign: a sanitize_*(...) wrapper in instrumented code
  kConcatExpr,     // Concat: a binary '+' expression
  kConcatAssign,   // Concat: a '+=' statement
};

struct FlowNode {
  NodeId id{};
  FlowNodeKind kind = FlowNodeKind::kInitLiteral;
  NodeOrigin origin = NodeOrigin::kLiteral;
  // Literal text, parameter name or variable name.
  std::string text;
  SourceLocation loc;
  // Ordered. Concat nodes have exactly {left, right}.
  std::vector<NodeId> preds;
  std::optional<SanitizerKind> sanitizer;  // kSanitize only
};

struct ExecPoint {
  NodeId node{};
  // Location of the executeQuery statement.
  SourceLocation loc;
};

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(SourceLocation loc, const std::string& message);
  const SourceLocation& location() const { return loc_; }

 private:
  SourceLocation loc_;
};

class FlowGraph {
 public:
  FlowGraph() = default;

  std::size_t size() const { return nodes_.size(); }
  const std::vector<FlowNode>& nodes() const { return nodes_; }
  const FlowNode& node(NodeId id) const { return nodes_.at(Index(id)); }
  const std::vector<NodeId>& preds(NodeId id) const { return node(id).preds; }
  const std::vector<NodeId>& succs(NodeId id) const { return succs_.at(Index(id)); }

  // One entry per executeQuery statement, ordered by source location.
  const std::vector<ExecPoint>& exec_points() const { return exec_points_; }

  // InitAnyString nodes in source order.
  std::vector<NodeId> placeholders() const;

  // Placeholder display name, "r1", "r2", ... numbered over InitAnyString
  // nodes in source order. Other nodes are named "n<id>".
  std::string DisplayName(NodeId id) const;

  // InitAnyString nodes that reach no execution point (lint, not an error).
  std::vector<NodeId> DeadInputs() const;

  bool IsExecPoint(NodeId id) const;

  // Checks the structural invariants (node arity, edge targets, exec point
  // membership). Returns an empty string when they hold.
  std::string Validate() const;

  std::string ToDot() const;

  // Low-level construction, used by BuildFlowGraph and by tests that need
  // hand-made graphs.
  NodeId AddNode(FlowNode node);
  void SetPreds(NodeId id, std::vector<NodeId> preds);
  void AddExecPoint(ExecPoint point);
  // Recomputes successor lists and sorts execution points.
  void Finalize();

 private:
  std::vector<FlowNode> nodes_;
  std::vector<std::vector<NodeId>> succs_;
  std::vector<ExecPoint> exec_points_;
  std::vector<std::uint32_t> placeholder_ordinal_;
};

/// Builds the flow graph with a reaching-definitions pass over the program.
/// Throws AnalysisError for undeclared or redeclared variables.
FlowGraph BuildFlowGraph(const Program& program);

/// Node ids of the execution points, ordered by source location.
std::vector<NodeId> FindExecutionPoints(const FlowGraph& graph);

}  // namespace assistkit

#endif  // ASSISTKIT_FLOW_GRAPH_H_
