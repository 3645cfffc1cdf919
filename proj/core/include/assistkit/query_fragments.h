// Query fragment sets.
//
// An abstract query is a sequence of literal text and placeholders, where a
// placeholder stands for the value of an InitAnyString node. The query
// fragment set of a flow node is the set of abstract queries that node can
// produce:
//
//   InitLiteral(s)   {s}
//   InitAnyString    {placeholder(n)}
//   Assign           union of the predecessors' sets
//   Concat           left set concatenated with right set
//
// Nodes are marked when first visited and memoized when finished. A node
// reached again while it is still being computed contributes nothing, so a
// loop contributes a single iteration.

#ifndef ASSISTKIT_QUERY_FRAGMENTS_H_
#define ASSISTKIT_QUERY_FRAGMENTS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "assistkit/flow_graph.h"

namespace assistkit {

struct LiteralSegment {
  std::string text;
  friend auto operator<=>(const LiteralSegment&, const LiteralSegment&) = default;
};

struct PlaceholderSegment {
  NodeId node{};
  friend auto operator<=>(const PlaceholderSegment&, const PlaceholderSegment&) = default;
};

using Segment = std::variant<LiteralSegment, PlaceholderSegment>;

class AbstractQuery {
 public:
  AbstractQuery() = default;
  static AbstractQuery Literal(std::string text);
  static AbstractQuery Placeholder(NodeId node);

  const std::vector<Segment>& segments() const { return segments_; }

  // Appends in normal form: adjacent literals merged, empty literals dropped
  // unless the query would otherwise be empty.
  void Append(const Segment& segment);
  AbstractQuery Concat(const AbstractQuery& right) const;

  std::vector<NodeId> Placeholders() const;
  bool HasPlaceholders() const;

  // Placeholders rendered as «name».
  std::string Render(const FlowGraph& graph) const;
  // Placeholders rendered through a caller-supplied function.
  template <typename NameFn>
  std::string RenderWith(NameFn&& name) const {
    std::string out;
    for (const Segment& s : segments_) {
      if (const auto* lit = std::get_if<LiteralSegment>(&s)) {
        out += lit->text;
      } else {
        out += "\xC2\xAB" + name(std::get<PlaceholderSegment>(s).node) + "\xC2\xBB";
      }
    }
    return out;
  }

  friend auto operator<=>(const AbstractQuery&, const AbstractQuery&) = default;
  friend bool operator==(const AbstractQuery&, const AbstractQuery&) = default;

 private:
  std::vector<Segment> segments_;
};

enum class ConcatMode { kExact, kCovering };

std::string_view ToString(ConcatMode mode);

inline constexpr std::size_t kDefaultQueryCap = 4096;

struct QueryFragmentSet {
  // Sorted, deduplicated.
  std::vector<AbstractQuery> fragments;
  // Set when covering mode dropped part of a cross product, or a set was
  // cut down to the cap.
  bool truncated = false;
};

class CrossProductOverflow : public std::runtime_error {
 public:
  CrossProductOverflow(NodeId node, SourceLocation loc, std::size_t size, std::size_t cap);
  NodeId node() const { return node_; }
  const SourceLocation& location() const { return loc_; }

 private:
  NodeId node_;
  SourceLocation loc_;
};

struct QfsOptions {
  ConcatMode mode = ConcatMode::kCovering;
  std::size_t cap = kDefaultQueryCap;
  bool memoize = true;
};

/// Query fragment set of node `start`. Throws CrossProductOverflow in exact
/// mode when a concatenation or union would exceed the cap.
QueryFragmentSet FindQueryFragments(const FlowGraph& graph, NodeId start,
                                    const QfsOptions& options = {});

/// Abstract queries at an execution point, ordered by rendered form.
std::vector<AbstractQuery> AbstractQueriesAt(const FlowGraph& graph, NodeId exec_point,
                                             const QfsOptions& options = {},
                                             bool* truncated = nullptr);

// Covering-mode pairing: left[i] with right[i mod |right|] over the longer
// side's indices. Exposed for tests.
std::vector<AbstractQuery> CoveringConcat(const std::vector<AbstractQuery>& left,
                                          const std::vector<AbstractQuery>& right);

}  // namespace assistkit

#endif  // ASSISTKIT_QUERY_FRAGMENTS_H_
