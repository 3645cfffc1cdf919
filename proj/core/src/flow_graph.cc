#include "assistkit/flow_graph.h"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace assistkit {

std::string_view ToString(FlowNodeKind kind) {
  switch (kind) {
    case FlowNodeKind::kInitLiteral:
      return "InitLiteral";
    case FlowNodeKind::kInitAnyString:
      return "InitAnyString";
    case FlowNodeKind::kAssign:
      return "Assign";
    case FlowNodeKind::kConcat:
      return "Concat";
  }
  return "?";
}

AnalysisError::AnalysisError(SourceLocation loc, const std::string& message)
    : std::runtime_error(ToString(loc) + ": " + message), loc_(std::move(loc)) {}

NodeId FlowGraph::AddNode(FlowNode node) {
  node.id = MakeNodeId(nodes_.size());
  nodes_.push_back(std::move(node));
  return nodes_.back().id;
}

void FlowGraph::SetPreds(NodeId id, std::vector<NodeId> preds) {
  nodes_.at(Index(id)).preds = std::move(preds);
}

void FlowGraph::AddExecPoint(ExecPoint point) { exec_points_.push_back(std::move(point)); }

void FlowGraph::Finalize() {
  succs_.assign(nodes_.size(), {});
  placeholder_ordinal_.assign(nodes_.size(), 0);
  std::uint32_t next_placeholder = 1;
  for (const FlowNode& n : nodes_) {
    for (NodeId p : n.preds) {
      auto& list = succs_.at(Index(p));
      if (std::find(list.begin(), list.end(), n.id) == list.end()) list.push_back(n.id);
    }
    if (n.kind == FlowNodeKind::kInitAnyString) placeholder_ordinal_[Index(n.id)] = next_placeholder++;
  }
  std::stable_sort(exec_points_.begin(), exec_points_.end(),
                   [](const ExecPoint& a, const ExecPoint& b) { return a.loc < b.loc; });
}

std::vector<NodeId> FlowGraph::placeholders() const {
  std::vector<NodeId> out;
  for (const FlowNode& n : nodes_) {
    if (n.kind == FlowNodeKind::kInitAnyString) out.push_back(n.id);
  }
  return out;
}

std::string FlowGraph::DisplayName(NodeId id) const {
  std::size_t i = Index(id);
  if (i < placeholder_ordinal_.size() && placeholder_ordinal_[i] != 0) {
    return "r" + std::to_string(placeholder_ordinal_[i]);
  }
  return "n" + std::to_string(i);
}

std::vector<NodeId> FlowGraph::DeadInputs() const {
  // Backward reachability from all execution points at once.
  std::vector<bool> live(nodes_.size(), false);
  std::vector<NodeId> stack;
  for (const ExecPoint& e : exec_points_) {
    if (!live[Index(e.node)]) {
      live[Index(e.node)] = true;
      stack.push_back(e.node);
    }
  }
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    for (NodeId p : preds(id)) {
      if (!live[Index(p)]) {
        live[Index(p)] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<NodeId> out;
  for (const FlowNode& n : nodes_) {
    if (n.kind == FlowNodeKind::kInitAnyString && !live[Index(n.id)]) out.push_back(n.id);
  }
  return out;
}

bool FlowGraph::IsExecPoint(NodeId id) const {
  return std::any_of(exec_points_.begin(), exec_points_.end(),
                     [id](const ExecPoint& e) { return e.node == id; });
}

std::string FlowGraph::Validate() const {
  std::ostringstream err;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const FlowNode& n = nodes_[i];
    if (Index(n.id) != i) err << "node " << i << " has mismatched id\n";
    for (NodeId p : n.preds) {
      if (Index(p) >= nodes_.size()) err << "node " << i << " references missing node\n";
    }
    switch (n.kind) {
      case FlowNodeKind::kInitLiteral:
      case FlowNodeKind::kInitAnyString:
        if (!n.preds.empty()) err << "init node " << i << " has predecessors\n";
        break;
      case FlowNodeKind::kAssign:
        if (n.preds.empty()) err << "assign node " << i << " has no predecessor\n";
        break;
      case FlowNodeKind::kConcat:
        if (n.preds.size() != 2) err << "concat node " << i << " does not have 2 predecessors\n";
        break;
    }
  }
  for (const ExecPoint& e : exec_points_) {
    if (Index(e.node) >= nodes_.size()) err << "execution point references missing node\n";
  }
  return err.str();
}

namespace {

std::string DotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string FlowGraph::ToDot() const {
  std::ostringstream out;
  out << "digraph flow {\n  node [shape=box, fontname=monospace];\n";
  for (const FlowNode& n : nodes_) {
    std::string label = std::string(ToString(n.kind));
    switch (n.kind) {
      case FlowNodeKind::kInitLiteral:
        label += "(\"" + n.text + "\")";
        break;
      case FlowNodeKind::kInitAnyString:
        label += "(" + n.text + ") " + DisplayName(n.id);
        break;
      case FlowNodeKind::kAssign:
        if (n.sanitizer) {
          label += "(sanitize_" + std::string(ToString(*n.sanitizer)) + ")";
        } else {
          label += "(" + n.text + ")";
        }
        break;
      case FlowNodeKind::kConcat:
        break;
    }
    label += "\n" + ToString(n.loc);
    out << "  n" << Index(n.id) << " [label=\"" << DotEscape(label) << "\"";
    if (IsExecPoint(n.id)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const FlowNode& n : nodes_) {
    for (std::size_t k = 0; k < n.preds.size(); ++k) {
      out << "  n" << Index(n.preds[k]) << " -> n" << Index(n.id);
      if (n.kind == FlowNodeKind::kConcat) out << " [label=\"" << (k == 0 ? "L" : "R") << "\"]";
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

namespace {

using DefId = std::uint32_t;
using SlotId = std::uint32_t;
// Reaching definitions per variable slot, each list sorted and unique.
using DefState = std::vector<std::vector<DefId>>;

void JoinInto(DefState& into, const DefState& other) {
  if (into.size() < other.size()) into.resize(other.size());
  for (std::size_t s = 0; s < other.size(); ++s) {
    std::vector<DefId> merged;
    std::set_union(into[s].begin(), into[s].end(), other[s].begin(), other[s].end(),
                   std::back_inserter(merged));
    into[s] = std::move(merged);
  }
}

// Reaching definitions over the structured program. Every definition
// statement (var, =, +=) is a definition of the slot it resolves to; a
// definition kills all others of the same slot.
class ReachingDefs {
 public:
  void Run(const Program& program) {
    scopes_.assign(1, {});
    DefState state;
    Walk(program, state);
  }

  // Reaching definitions at each variable use. Uses are VarRef expressions
  // and the implicit left operand of '+=' statements.
  std::unordered_map<const void*, std::vector<DefId>> uses;
  std::unordered_map<const Stmt*, DefId> def_of_stmt;

 private:
  SlotId Resolve(const std::string& name, const SourceLocation& loc) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    throw AnalysisError(loc, "use of undeclared variable '" + name + "'");
  }

  DefId DefFor(const Stmt* s) {
    auto [it, inserted] = def_of_stmt.try_emplace(s, static_cast<DefId>(def_of_stmt.size()));
    return it->second;
  }

  SlotId SlotFor(const Stmt* decl) {
    auto [it, inserted] = slot_of_decl_.try_emplace(decl, static_cast<SlotId>(slot_of_decl_.size()));
    return it->second;
  }

  static std::vector<DefId>& Slot(DefState& state, SlotId slot) {
    if (state.size() <= slot) state.resize(slot + 1);
    return state[slot];
  }

  void RecordUse(const void* key, SlotId slot, DefState& state) {
    uses[key] = Slot(state, slot);
  }

  void WalkExpr(const Expr& e, DefState& state) {
    if (e.kind == Expr::Kind::kVarRef) {
      RecordUse(&e, Resolve(e.text, e.loc), state);
      return;
    }
    for (const Expr& child : e.operands) WalkExpr(child, state);
  }

  void WalkCond(const Cond& c) {
    CheckNames(c.left);
    CheckNames(c.right);
  }

  void CheckNames(const Expr& e) const {
    if (e.kind == Expr::Kind::kVarRef) Resolve(e.text, e.loc);
    for (const Expr& child : e.operands) CheckNames(child);
  }

  void WalkScoped(const std::vector<Stmt>& body, DefState& state) {
    scopes_.emplace_back();
    Walk(body, state);
    scopes_.pop_back();
  }

  void Walk(const std::vector<Stmt>& body, DefState& state) {
    for (const Stmt& s : body) {
      switch (s.kind) {
        case Stmt::Kind::kVarDecl: {
          WalkExpr(s.value, state);
          auto& scope = scopes_.back();
          SlotId slot = SlotFor(&s);
          auto [it, inserted] = scope.try_emplace(s.name, slot);
          if (!inserted && it->second != slot) {
            throw AnalysisError(s.loc, "variable '" + s.name + "' redeclared in the same block");
          }
          Slot(state, slot) = {DefFor(&s)};
          break;
        }
        case Stmt::Kind::kAssign: {
          WalkExpr(s.value, state);
          SlotId slot = Resolve(s.name, s.loc);
          Slot(state, slot) = {DefFor(&s)};
          break;
        }
        case Stmt::Kind::kConcatAssign: {
          SlotId slot = Resolve(s.name, s.loc);
          RecordUse(&s, slot, state);
          WalkExpr(s.value, state);
          Slot(state, slot) = {DefFor(&s)};
          break;
        }
        case Stmt::Kind::kExecuteQuery:
          WalkExpr(s.value, state);
          break;
        case Stmt::Kind::kIf: {
          WalkCond(s.cond);
          DefState then_state = state;
          DefState else_state = state;
          WalkScoped(s.body, then_state);
          WalkScoped(s.else_body, else_state);
          JoinInto(then_state, else_state);
          state = std::move(then_state);
          break;
        }
        case Stmt::Kind::kWhile: {
          WalkCond(s.cond);
          DefState head = state;
          for (;;) {
            DefState body_out = head;
            WalkScoped(s.body, body_out);
            DefState next = state;
            JoinInto(next, body_out);
            if (next.size() < head.size()) next.resize(head.size());
            if (head.size() < next.size()) head.resize(next.size());
            if (next == head) break;
            head = std::move(next);
          }
          state = std::move(head);
          break;
        }
      }
    }
  }

  std::vector<std::unordered_map<std::string, SlotId>> scopes_;
  std::unordered_map<const Stmt*, SlotId> slot_of_decl_;
};

// Edge target that may be a definition whose node has not been created yet
// (loop back edges).
struct PendingRef {
  bool is_def = false;
  std::uint32_t value = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(const ReachingDefs& rd) : rd_(rd) {}

  FlowGraph Build(const Program& program) {
    Walk(program);
    for (auto& [id, refs] : pending_) {
      std::vector<NodeId> preds;
      preds.reserve(refs.size());
      for (const PendingRef& r : refs) preds.push_back(Resolve(r));
      graph_.SetPreds(id, std::move(preds));
    }
    for (auto& [node, loc] : pending_exec_) {
      graph_.AddExecPoint(ExecPoint{Resolve(node), loc});
    }
    graph_.Finalize();
    return std::move(graph_);
  }

 private:
  NodeId Resolve(const PendingRef& r) const {
    if (!r.is_def) return MakeNodeId(r.value);
    return def_node_.at(r.value);
  }

  static PendingRef Node(NodeId id) { return PendingRef{false, static_cast<std::uint32_t>(Index(id))}; }

  NodeId Add(FlowNodeKind kind, NodeOrigin origin, std::string text, SourceLocation loc,
             std::vector<PendingRef> preds, std::optional<SanitizerKind> sanitizer = {}) {
    FlowNode n;
    n.sanitizer = sanitizer;
    n.kind = kind;
    n.origin = origin;
    n.text = std::move(text);
    n.loc = std::move(loc);
    NodeId id = graph_.AddNode(std::move(n));
    if (!preds.empty()) pending_.emplace_back(id, std::move(preds));
    return id;
  }

  PendingRef Use(const void* key, const std::string& name, const SourceLocation& loc) {
    const std::vector<DefId>& defs = rd_.uses.at(key);
    if (defs.empty()) throw AnalysisError(loc, "variable '" + name + "' has no reaching definition");
    if (defs.size() == 1) return PendingRef{true, defs.front()};
    std::vector<PendingRef> preds;
    for (DefId d : defs) preds.push_back(PendingRef{true, d});
    return Node(Add(FlowNodeKind::kAssign, NodeOrigin::kMerge, name, loc, std::move(preds)));
  }

  PendingRef Value(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::kStringLiteral:
        return Node(Add(FlowNodeKind::kInitLiteral, NodeOrigin::kLiteral, e.text, e.loc, {}));
      case Expr::Kind::kGetParam:
        return Node(Add(FlowNodeKind::kInitAnyString, NodeOrigin::kGetParam, e.text, e.loc, {}));
      case Expr::Kind::kVarRef:
        return Use(&e, e.text, e.loc);
      case Expr::Kind::kConcat: {
        PendingRef l = Value(e.left());
        PendingRef r = Value(e.right());
        return Node(Add(FlowNodeKind::kConcat, NodeOrigin::kConcatExpr, "", e.loc, {l, r}));
      }
      case Expr::Kind::kSanitize: {
        PendingRef v = Value(e.operand());
        return Node(
            Add(FlowNodeKind::kAssign, NodeOrigin::kSanitize, "", e.loc, {v}, e.sanitizer));
      }
    }
    return {};
  }

  void Define(const Stmt& s, NodeId node) { def_node_[rd_.def_of_stmt.at(&s)] = node; }

  void Walk(const std::vector<Stmt>& body) {
    for (const Stmt& s : body) {
      switch (s.kind) {
        case Stmt::Kind::kVarDecl:
        case Stmt::Kind::kAssign: {
          PendingRef v = Value(s.value);
          Define(s, Add(FlowNodeKind::kAssign, NodeOrigin::kDefinition, s.name, s.loc, {v}));
          break;
        }
        case Stmt::Kind::kConcatAssign: {
          PendingRef l = Use(&s, s.name, s.loc);
          PendingRef r = Value(s.value);
          Define(s, Add(FlowNodeKind::kConcat, NodeOrigin::kConcatAssign, s.name, s.loc, {l, r}));
          break;
        }
        case Stmt::Kind::kExecuteQuery:
          pending_exec_.emplace_back(Value(s.value), s.loc);
          break;
        case Stmt::Kind::kIf:
          Walk(s.body);
          Walk(s.else_body);
          break;
        case Stmt::Kind::kWhile:
          Walk(s.body);
          break;
      }
    }
  }

  const ReachingDefs& rd_;
  FlowGraph graph_;
  std::unordered_map<DefId, NodeId> def_node_;
  std::vector<std::pair<NodeId, std::vector<PendingRef>>> pending_;
  std::vector<std::pair<PendingRef, SourceLocation>> pending_exec_;
};

}  // namespace

FlowGraph BuildFlowGraph(const Program& program) {
  ReachingDefs rd;
  rd.Run(program);
  GraphBuilder builder(rd);
  return builder.Build(program);
}

std::vector<NodeId> FindExecutionPoints(const FlowGraph& graph) {
  std::vector<NodeId> out;
  out.reserve(graph.exec_points().size());
  for (const ExecPoint& e : graph.exec_points()) out.push_back(e.node);
  return out;
}

}  // namespace assistkit
