#include "assistkit/query_fragments.h"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

namespace assistkit {

AbstractQuery AbstractQuery::Literal(std::string text) {
  AbstractQuery q;
  q.segments_.push_back(LiteralSegment{std::move(text)});
  return q;
}

AbstractQuery AbstractQuery::Placeholder(NodeId node) {
  AbstractQuery q;
  q.segments_.push_back(PlaceholderSegment{node});
  return q;
}

void AbstractQuery::Append(const Segment& segment) {
  if (const auto* lit = std::get_if<LiteralSegment>(&segment)) {
    if (!segments_.empty()) {
      if (auto* last = std::get_if<LiteralSegment>(&segments_.back())) {
        last->text += lit->text;
        return;
      }
      if (lit->text.empty()) return;
    }
    segments_.push_back(segment);
    return;
  }
  // A lone empty literal only exists to represent the empty query.
  if (segments_.size() == 1) {
    if (const auto* only = std::get_if<LiteralSegment>(&segments_.front());
        only && only->text.empty()) {
      segments_.clear();
    }
  }
  segments_.push_back(segment);
}

AbstractQuery AbstractQuery::Concat(const AbstractQuery& right) const {
  AbstractQuery out = *this;
  for (const Segment& s : right.segments_) out.Append(s);
  return out;
}

std::vector<NodeId> AbstractQuery::Placeholders() const {
  std::vector<NodeId> out;
  for (const Segment& s : segments_) {
    if (const auto* p = std::get_if<PlaceholderSegment>(&s)) out.push_back(p->node);
  }
  return out;
}

bool AbstractQuery::HasPlaceholders() const {
  return std::any_of(segments_.begin(), segments_.end(), [](const Segment& s) {
    return std::holds_alternative<PlaceholderSegment>(s);
  });
}

std::string AbstractQuery::Render(const FlowGraph& graph) const {
  return RenderWith([&graph](NodeId id) { return graph.DisplayName(id); });
}

std::string_view ToString(ConcatMode mode) {
  return mode == ConcatMode::kExact ? "exact" : "covering";
}

CrossProductOverflow::CrossProductOverflow(NodeId node, SourceLocation loc, std::size_t size,
                                           std::size_t cap)
    : std::runtime_error(ToString(loc) + ": cross-product overflow at node n" +
                         std::to_string(Index(node)) + ": " + std::to_string(size) +
                         " abstract queries exceed the cap of " + std::to_string(cap)),
      node_(node),
      loc_(std::move(loc)) {}

std::vector<AbstractQuery> CoveringConcat(const std::vector<AbstractQuery>& left,
                                          const std::vector<AbstractQuery>& right) {
  std::vector<AbstractQuery> out;
  if (left.empty() || right.empty()) return out;
  std::size_t n = std::max(left.size(), right.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(left[i % left.size()].Concat(right[i % right.size()]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

using Set = std::vector<AbstractQuery>;

enum class Mark : unsigned char { kUnvisited, kInProgress, kDone };

class QfsSolver {
 public:
  QfsSolver(const FlowGraph& graph, const QfsOptions& options)
      : graph_(graph),
        options_(options),
        marks_(graph.size(), Mark::kUnvisited),
        memo_(graph.size()) {}

  QueryFragmentSet Solve(NodeId start) {
    std::optional<Set> ready = Enter(start);
    while (!ready) {
      Frame& top = stack_.back();
      const std::vector<NodeId>& preds = graph_.preds(top.node);
      if (top.next < preds.size()) {
        NodeId p = preds[top.next];
        std::optional<Set> child = Enter(p);
        if (child) Contribute(top, std::move(*child));
        continue;
      }
      Set result = Finish(top);
      stack_.pop_back();
      if (stack_.empty()) {
        ready = std::move(result);
      } else {
        Contribute(stack_.back(), std::move(result));
      }
    }
    return QueryFragmentSet{std::move(*ready), truncated_};
  }

 private:
  struct Frame {
    NodeId node;
    std::size_t next = 0;
    Set acc;
  };

  // Returns the node's set if it is available without descending, otherwise
  // pushes a frame for it.
  std::optional<Set> Enter(NodeId n) {
    Mark& mark = marks_[Index(n)];
    if (mark == Mark::kDone && options_.memoize) return *memo_[Index(n)];
    if (mark == Mark::kInProgress) {
      // Revisited inside its own computation: the loop is cut here.
      return memo_[Index(n)] ? *memo_[Index(n)] : Set{};
    }
    const FlowNode& node = graph_.node(n);
    switch (node.kind) {
      case FlowNodeKind::kInitLiteral:
        return Store(n, Set{AbstractQuery::Literal(node.text)});
      case FlowNodeKind::kInitAnyString:
        return Store(n, Set{AbstractQuery::Placeholder(n)});
      case FlowNodeKind::kAssign:
      case FlowNodeKind::kConcat:
        mark = Mark::kInProgress;
        stack_.push_back(Frame{n, 0, {}});
        return std::nullopt;
    }
    return Set{};
  }

  Set Store(NodeId n, Set s) {
    marks_[Index(n)] = options_.memoize ? Mark::kDone : Mark::kUnvisited;
    if (options_.memoize) memo_[Index(n)] = s;
    return s;
  }

  void Contribute(Frame& f, Set child) {
    const FlowNode& node = graph_.node(f.node);
    if (node.kind == FlowNodeKind::kAssign) {
      Set merged;
      merged.reserve(f.acc.size() + child.size());
      std::set_union(f.acc.begin(), f.acc.end(), child.begin(), child.end(),
                     std::back_inserter(merged));
      f.acc = Capped(f.node, std::move(merged));
    } else if (f.next == 0) {
      f.acc = std::move(child);
    } else {
      f.acc = ConcatSets(f.node, f.acc, child);
    }
    ++f.next;
  }

  Set Finish(const Frame& f) { return Store(f.node, f.acc); }

  Set Capped(NodeId n, Set s) {
    if (s.size() <= options_.cap) return s;
    if (options_.mode == ConcatMode::kExact) {
      throw CrossProductOverflow(n, graph_.node(n).loc, s.size(), options_.cap);
    }
    s.resize(options_.cap);
    truncated_ = true;
    return s;
  }

  Set ConcatSets(NodeId n, const Set& left, const Set& right) {
    if (options_.mode == ConcatMode::kExact) {
      std::size_t product = left.size() * right.size();
      if (!left.empty() && product / left.size() != right.size()) product = SIZE_MAX;
      if (product > options_.cap) {
        throw CrossProductOverflow(n, graph_.node(n).loc, product, options_.cap);
      }
      Set out;
      out.reserve(product);
      for (const AbstractQuery& l : left) {
        for (const AbstractQuery& r : right) out.push_back(l.Concat(r));
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    Set out = CoveringConcat(left, right);
    if (out.size() < left.size() * right.size()) truncated_ = true;
    return Capped(n, std::move(out));
  }

  const FlowGraph& graph_;
  const QfsOptions& options_;
  std::vector<Mark> marks_;
  std::vector<std::optional<Set>> memo_;
  std::vector<Frame> stack_;
  bool truncated_ = false;
};

}  // namespace

QueryFragmentSet FindQueryFragments(const FlowGraph& graph, NodeId start,
                                    const QfsOptions& options) {
  QfsSolver solver(graph, options);
  return solver.Solve(start);
}

std::vector<AbstractQuery> AbstractQueriesAt(const FlowGraph& graph, NodeId exec_point,
                                             const QfsOptions& options, bool* truncated) {
  QueryFragmentSet qfs = FindQueryFragments(graph, exec_point, options);
  if (truncated) *truncated = qfs.truncated;
  std::vector<std::pair<std::string, AbstractQuery>> keyed;
  keyed.reserve(qfs.fragments.size());
  for (AbstractQuery& q : qfs.fragments) keyed.emplace_back(q.Render(graph), std::move(q));
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<AbstractQuery> out;
  out.reserve(keyed.size());
  for (auto& [text, q] : keyed) out.push_back(std::move(q));
  return out;
}

}  // namespace assistkit
