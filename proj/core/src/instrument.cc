#include "assistkit/instrument.h"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace assistkit {

std::string_view ToString(SiteKind kind) {
  switch (kind) {
    case SiteKind::kConcatExpr:
      return "concat";
    case SiteKind::kConcatAssign:
      return "concat-assign";
    case SiteKind::kExecuteQuery:
      return "execute-query";
  }
  return "?";
}

std::string_view ToString(OperandSide side) {
  switch (side) {
    case OperandSide::kLeft:
      return "left";
    case OperandSide::kRight:
      return "right";
    case OperandSide::kBoth:
      return "both";
    case OperandSide::kWhole:
      return "whole";
  }
  return "?";
}

std::string_view ToString(Diagnostic::Severity severity) {
  return severity == Diagnostic::Severity::kError ? "error" : "warning";
}

namespace {

OperandSide Merge(OperandSide a, OperandSide b) { return a == b ? a : OperandSide::kBoth; }

bool Covers(OperandSide side, OperandSide wanted) {
  return side == wanted || side == OperandSide::kBoth;
}

}  // namespace

std::vector<InsertionPoint> LocateInsertionPoints(const FlowGraph& graph,
                                                  const std::vector<NodeId>& placeholders) {
  std::vector<InsertionPoint> out;
  for (NodeId p : placeholders) {
    // Keyed by site node; execution points are keyed by statement location
    // because several executeQuery statements may share one node.
    std::map<NodeId, InsertionPoint> concats;
    std::map<SourceLocation, InsertionPoint> execs;
    std::vector<bool> seen(graph.size(), false);
    std::deque<NodeId> work{p};
    seen[Index(p)] = true;
    while (!work.empty()) {
      NodeId n = work.front();
      work.pop_front();
      for (const ExecPoint& e : graph.exec_points()) {
        if (e.node != n) continue;
        execs.try_emplace(e.loc, InsertionPoint{p, n, SiteKind::kExecuteQuery, e.loc,
                                                OperandSide::kWhole});
      }
      for (NodeId s : graph.succs(n)) {
        const FlowNode& succ = graph.node(s);
        if (succ.kind == FlowNodeKind::kConcat) {
          OperandSide side = succ.preds[0] == n ? OperandSide::kLeft : OperandSide::kRight;
          if (succ.preds[0] == n && succ.preds[1] == n) side = OperandSide::kBoth;
          SiteKind kind = succ.origin == NodeOrigin::kConcatAssign ? SiteKind::kConcatAssign
                                                                   : SiteKind::kConcatExpr;
          auto [it, inserted] = concats.try_emplace(s, InsertionPoint{p, s, kind, succ.loc, side});
          if (!inserted) it->second.side = Merge(it->second.side, side);
          continue;
        }
        if (!seen[Index(s)]) {
          seen[Index(s)] = true;
          work.push_back(s);
        }
      }
    }
    std::vector<InsertionPoint> mine;
    for (auto& [id, point] : concats) mine.push_back(point);
    for (auto& [loc, point] : execs) mine.push_back(point);
    std::sort(mine.begin(), mine.end(), [](const InsertionPoint& a, const InsertionPoint& b) {
      return std::tie(a.loc, a.site) < std::tie(b.loc, b.site);
    });
    out.insert(out.end(), mine.begin(), mine.end());
  }
  return out;
}

SanitizationPlan BuildPlan(const FlowGraph& graph, const std::vector<InsertionPoint>& points,
                           const std::vector<PlaceholderResolution>& resolutions,
                           const PlanOptions& options) {
  SanitizationPlan plan;
  std::map<NodeId, const PlaceholderResolution*> by_node;
  for (const PlaceholderResolution& r : resolutions) by_node[r.placeholder] = &r;

  std::set<std::pair<NodeId, std::string>> reported;
  auto diagnose = [&](Diagnostic::Severity severity, NodeId p, std::string detail,
                      std::string action, const SourceLocation& loc) {
    if (!reported.emplace(p, detail).second) return;
    plan.diagnostics.push_back(Diagnostic{severity, p, graph.DisplayName(p), std::move(detail),
                                          std::move(action), loc});
  };

  for (const InsertionPoint& point : points) {
    NodeId p = point.placeholder;
    const FlowNode& input = graph.node(p);
    std::optional<SanitizerKind> kind;
    auto it = by_node.find(p);
    if (it == by_node.end()) {
      // Not part of any abstract query; nothing to decide.
      continue;
    }
    const PlaceholderResolution& r = *it->second;
    switch (r.status) {
      case PlaceholderResolution::Status::kKind:
        kind = r.kind;
        break;
      case PlaceholderResolution::Status::kConflict:
        if (options.conflict == ConflictPolicy::kNumeric) {
          kind = SanitizerKind::kNumeric;
          diagnose(Diagnostic::Severity::kWarning, p,
                   "getParam(\"" + input.text + "\") is used both as a string and as a number",
                   "sanitized as numeric", input.loc);
        } else {
          plan.failed = true;
          diagnose(Diagnostic::Severity::kError, p,
                   "getParam(\"" + input.text + "\") is used both as a string and as a number",
                   "not instrumented; check manually or rerun with --conflict=numeric", input.loc);
        }
        break;
      case PlaceholderResolution::Status::kUnresolvable:
        if (options.unresolvable == UnresolvablePolicy::kString) {
          kind = SanitizerKind::kString;
          diagnose(Diagnostic::Severity::kWarning, p, r.reason, "sanitized as string", input.loc);
        } else {
          diagnose(Diagnostic::Severity::kWarning, p, r.reason, "left unsanitized", input.loc);
        }
        break;
    }
    if (!kind) continue;
    if (point.site == SiteKind::kExecuteQuery) {
      diagnose(Diagnostic::Severity::kWarning, p,
               "input reaches executeQuery without concatenation at " + ToString(point.loc),
               "sanitizing the whole executeQuery argument", point.loc);
    }
    plan.entries.push_back(PlanEntry{point, *kind});
  }

  // One operand can carry several inputs; they must agree on the sanitizer.
  std::map<std::tuple<SourceLocation, SiteKind, bool>, std::set<SanitizerKind>> kinds_at;
  auto key = [](const InsertionPoint& pt, bool right) {
    return std::make_tuple(pt.loc, pt.site, right);
  };
  for (const PlanEntry& e : plan.entries) {
    if (e.point.side != OperandSide::kRight) kinds_at[key(e.point, false)].insert(e.kind);
    if (e.point.side != OperandSide::kLeft) kinds_at[key(e.point, true)].insert(e.kind);
  }
  for (PlanEntry& e : plan.entries) {
    bool mixed = false;
    if (e.point.side != OperandSide::kRight) mixed |= kinds_at[key(e.point, false)].size() > 1;
    if (e.point.side != OperandSide::kLeft) mixed |= kinds_at[key(e.point, true)].size() > 1;
    if (mixed && e.kind != SanitizerKind::kNumeric) {
      e.kind = SanitizerKind::kNumeric;
      diagnose(Diagnostic::Severity::kWarning, e.point.placeholder,
               "operand at " + ToString(e.point.loc) + " carries inputs of different kinds",
               "sanitized as numeric", e.point.loc);
    }
  }
  return plan;
}

namespace {

struct SiteAction {
  // Sanitizer for each operand; the plan keeps each side to one kind.
  std::optional<SanitizerKind> left;
  std::optional<SanitizerKind> right;
  bool matched = false;
};

using SiteKey = std::pair<SiteKind, SourceLocation>;

void Wrap(Expr& e, SanitizerKind kind) {
  if (e.kind == Expr::Kind::kSanitize && e.sanitizer == kind) return;
  SourceLocation loc = e.loc;
  e = Expr::Sanitize(kind, std::move(e), std::move(loc));
}

class Rewriter {
 public:
  explicit Rewriter(std::map<SiteKey, SiteAction> actions) : actions_(std::move(actions)) {}

  void Run(std::vector<Stmt>& body) {
    for (Stmt& s : body) RewriteStmt(s);
  }

  void CheckAllMatched() const {
    for (const auto& [key, action] : actions_) {
      if (!action.matched) {
        throw InstrumentError("stale sanitization plan: no " + std::string(ToString(key.first)) +
                              " site at " + ToString(key.second));
      }
    }
  }

 private:
  SiteAction* Find(SiteKind kind, const SourceLocation& loc) {
    auto it = actions_.find({kind, loc});
    return it == actions_.end() ? nullptr : &it->second;
  }

  void RewriteExpr(Expr& e) {
    for (Expr& child : e.operands) RewriteExpr(child);
    if (e.kind != Expr::Kind::kConcat) return;
    if (SiteAction* a = Find(SiteKind::kConcatExpr, e.loc)) {
      a->matched = true;
      if (a->left) Wrap(e.left(), *a->left);
      if (a->right) Wrap(e.right(), *a->right);
    }
  }

  // Concatenation is left-associative and the grammar has no parentheses,
  // so `first` goes to the left end of the chain rather than on top of it.
  static Expr Prepend(Expr first, Expr chain, const SourceLocation& loc) {
    if (chain.kind != Expr::Kind::kConcat) return Expr::Concat(std::move(first), std::move(chain), loc);
    chain.left() = Prepend(std::move(first), std::move(chain.left()), loc);
    return chain;
  }

  // The innermost-left concatenation of `x = sanitize(x) + ...`, or null.
  static Expr* SanitizedSelfConcat(Stmt& s) {
    if (s.kind != Stmt::Kind::kAssign || s.value.kind != Expr::Kind::kConcat) return nullptr;
    Expr* e = &s.value;
    while (e->left().kind == Expr::Kind::kConcat) e = &e->left();
    const Expr& first = e->left();
    bool self = first.kind == Expr::Kind::kSanitize && first.operand().kind == Expr::Kind::kVarRef &&
                first.operand().text == s.name;
    return self ? e : nullptr;
  }

  void RewriteStmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::kVarDecl:
      case Stmt::Kind::kAssign:
        RewriteExpr(s.value);
        // A '+=' whose left operand was sanitized earlier was rewritten into
        // `x = sanitize(x) + ...`; the site is still recognized here.
        if (Expr* self = SanitizedSelfConcat(s)) {
          if (SiteAction* a = Find(SiteKind::kConcatAssign, s.loc)) {
            a->matched = true;
            if (a->left) Wrap(self->left(), *a->left);
            if (a->right) Wrap(self->right(), *a->right);
          }
        }
        break;
      case Stmt::Kind::kConcatAssign:
        RewriteExpr(s.value);
        if (SiteAction* a = Find(SiteKind::kConcatAssign, s.loc)) {
          a->matched = true;
          if (a->right) Wrap(s.value, *a->right);
          if (a->left) {
            // `x += e` has no left operand expression to wrap; spell it out.
            Expr self = Expr::Sanitize(*a->left, Expr::VarRef(s.name, s.loc), s.loc);
            s.value = Prepend(std::move(self), std::move(s.value), s.loc);
            s.kind = Stmt::Kind::kAssign;
          }
        }
        break;
      case Stmt::Kind::kExecuteQuery:
        RewriteExpr(s.value);
        if (SiteAction* a = Find(SiteKind::kExecuteQuery, s.loc)) {
          a->matched = true;
          Wrap(s.value, *a->right);
        }
        break;
      case Stmt::Kind::kIf:
      case Stmt::Kind::kWhile:
        RewriteExpr(s.cond.left);
        RewriteExpr(s.cond.right);
        Run(s.body);
        Run(s.else_body);
        break;
    }
  }

  std::map<SiteKey, SiteAction> actions_;
};

}  // namespace

Program InstrumentProgram(const Program& program, const SanitizationPlan& plan) {
  std::map<SiteKey, SiteAction> actions;
  for (const PlanEntry& e : plan.entries) {
    SiteAction& a = actions[{e.point.site, e.point.loc}];
    // The whole executeQuery argument is treated as a right operand.
    if (Covers(e.point.side, OperandSide::kLeft)) a.left = e.kind;
    if (Covers(e.point.side, OperandSide::kRight) || e.point.side == OperandSide::kWhole) a.right = e.kind;
  }
  Program out = program;
  Rewriter rewriter(std::move(actions));
  rewriter.Run(out);
  rewriter.CheckAllMatched();
  return out;
}

std::vector<std::pair<NodeId, NodeId>> FindUnsanitizedFlows(const FlowGraph& graph,
                                                            const std::vector<NodeId>& placeholders) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId p : placeholders) {
    std::vector<bool> seen(graph.size(), false);
    std::deque<NodeId> work{p};
    seen[Index(p)] = true;
    while (!work.empty()) {
      NodeId n = work.front();
      work.pop_front();
      for (NodeId s : graph.succs(n)) {
        if (seen[Index(s)] || graph.node(s).origin == NodeOrigin::kSanitize) continue;
        seen[Index(s)] = true;
        work.push_back(s);
      }
    }
    std::set<NodeId> hit;
    for (const ExecPoint& e : graph.exec_points()) {
      if (seen[Index(e.node)] && hit.insert(e.node).second) out.emplace_back(p, e.node);
    }
  }
  return out;
}

}  // namespace assistkit
