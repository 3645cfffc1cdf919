#include <random>
#include <set>

#include <gtest/gtest.h>

#include "assistkit/flow_graph.h"
#include "path_oracle.h"
#include "program_gen.h"
#include "test_util.h"

namespace assistkit::testing {
namespace {

std::size_t CountKind(const FlowGraph& g, FlowNodeKind kind) {
  std::size_t n = 0;
  for (const FlowNode& node : g.nodes()) n += node.kind == kind ? 1 : 0;
  return n;
}

std::size_t CountOrigin(const FlowGraph& g, NodeOrigin origin) {
  std::size_t n = 0;
  for (const FlowNode& node : g.nodes()) n += node.origin == origin ? 1 : 0;
  return n;
}

// getParam calls outside conditions.
std::size_t ValueGetParams(const Expr& e) {
  std::size_t n = e.kind == Expr::Kind::kGetParam ? 1 : 0;
  for (const Expr& c : e.operands) n += ValueGetParams(c);
  return n;
}

std::size_t ValueGetParams(const std::vector<Stmt>& body) {
  std::size_t n = 0;
  for (const Stmt& s : body) {
    if (s.kind == Stmt::Kind::kIf || s.kind == Stmt::Kind::kWhile) {
      n += ValueGetParams(s.body) + ValueGetParams(s.else_body);
    } else {
      n += ValueGetParams(s.value);
    }
  }
  return n;
}

TEST(FlowGraph, Bookstore) {
  FlowGraph g = BuildFlowGraph(ParseCorpus("bookstore_mini.qs"));
  EXPECT_EQ(g.Validate(), "");
  EXPECT_EQ(CountKind(g, FlowNodeKind::kInitAnyString), 2u);
  EXPECT_EQ(CountKind(g, FlowNodeKind::kConcat), 5u);
  EXPECT_EQ(CountKind(g, FlowNodeKind::kInitLiteral), 4u);
  ASSERT_EQ(g.exec_points().size(), 1u);

  // The query variable is reached by three definitions at executeQuery.
  const FlowNode& exec = g.node(g.exec_points()[0].node);
  EXPECT_EQ(exec.origin, NodeOrigin::kMerge);
  EXPECT_EQ(exec.text, "query");
  EXPECT_EQ(exec.preds.size(), 3u);

  std::vector<NodeId> inputs = g.placeholders();
  ASSERT_EQ(inputs.size(), 2u);
  EXPECT_EQ(g.node(inputs[0]).text, "author");
  EXPECT_EQ(g.DisplayName(inputs[0]), "r1");
  EXPECT_EQ(g.node(inputs[1]).text, "price");
  EXPECT_EQ(g.DisplayName(inputs[1]), "r2");
  EXPECT_TRUE(g.DeadInputs().empty());
}

TEST(FlowGraph, SuccessorsMirrorPredecessors) {
  FlowGraph g = BuildFlowGraph(ParseCorpus("portal.qs"));
  for (const FlowNode& n : g.nodes()) {
    for (NodeId p : n.preds) {
      const auto& s = g.succs(p);
      EXPECT_NE(std::find(s.begin(), s.end(), n.id), s.end());
    }
  }
}

TEST(FlowGraph, ConcatAssignHasNoSeparateAssignNode) {
  FlowGraph g = BuildFlowGraph(Parse("var q = \"a\"; q += \"b\"; executeQuery(q);"));
  EXPECT_EQ(CountKind(g, FlowNodeKind::kConcat), 1u);
  EXPECT_EQ(CountOrigin(g, NodeOrigin::kDefinition), 1u);
  const FlowNode& exec = g.node(g.exec_points()[0].node);
  EXPECT_EQ(exec.origin, NodeOrigin::kConcatAssign);
  EXPECT_EQ(g.node(exec.preds[0]).origin, NodeOrigin::kDefinition);
}

TEST(FlowGraph, LoopCreatesBackEdge) {
  FlowGraph g = BuildFlowGraph(ParseCorpus("loop_example.qs"));
  EXPECT_EQ(g.Validate(), "");
  // The use of q in `q += "X"` merges the declaration and the loop's own
  // concatenation.
  const FlowNode* merge = nullptr;
  for (const FlowNode& n : g.nodes()) {
    if (n.origin == NodeOrigin::kMerge && n.loc.line == 3) merge = &n;
  }
  ASSERT_NE(merge, nullptr);
  ASSERT_EQ(merge->preds.size(), 2u);
  bool has_back_edge = false;
  for (NodeId p : merge->preds) has_back_edge |= g.node(p).origin == NodeOrigin::kConcatAssign;
  EXPECT_TRUE(has_back_edge);
}

TEST(FlowGraph, ConditionsCreateNoNodes) {
  FlowGraph a = BuildFlowGraph(Parse("var q = \"a\"; executeQuery(q);"));
  FlowGraph b = BuildFlowGraph(Parse("var q = \"a\"; if (getParam(\"x\") == q) { } executeQuery(q);"));
  EXPECT_EQ(a.size(), b.size());
}

TEST(FlowGraph, BlockScoping) {
  EXPECT_THROW(BuildFlowGraph(Parse("if (\"a\" == \"b\") { var t = \"x\"; } executeQuery(t);")), AnalysisError);
  EXPECT_THROW(BuildFlowGraph(Parse("executeQuery(q);")), AnalysisError);
  EXPECT_THROW(BuildFlowGraph(Parse("q = \"a\";")), AnalysisError);
  // Shadowing inside a block does not leak out.
  FlowGraph g = BuildFlowGraph(
      Parse("var q = \"a\";\nif (\"a\" == \"b\") {\n    var q = getParam(\"x\");\n    executeQuery(q);\n}\nexecuteQuery(q);"));
  ASSERT_EQ(g.exec_points().size(), 2u);
  EXPECT_EQ(g.node(g.exec_points()[0].node).kind, FlowNodeKind::kAssign);
  const FlowNode& outer = g.node(g.exec_points()[1].node);
  EXPECT_EQ(outer.origin, NodeOrigin::kDefinition);
  EXPECT_EQ(g.node(outer.preds[0]).kind, FlowNodeKind::kInitLiteral);
}

TEST(FlowGraph, DeadInputsAreReportedNotRejected) {
  FlowGraph g = BuildFlowGraph(Parse("var unused = getParam(\"a\");\nexecuteQuery(\"SELECT 1\");"));
  ASSERT_EQ(g.DeadInputs().size(), 1u);
  EXPECT_EQ(g.node(g.DeadInputs()[0]).text, "a");
}

TEST(FlowGraph, ExecutionPointsInSourceOrder) {
  FlowGraph g = BuildFlowGraph(ParseCorpus("login.qs"));
  ASSERT_EQ(g.exec_points().size(), 2u);
  EXPECT_LT(g.exec_points()[0].loc, g.exec_points()[1].loc);
  std::vector<NodeId> found = FindExecutionPoints(g);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0], g.exec_points()[0].node);
}

TEST(FlowGraph, SanitizeBecomesAssign) {
  FlowGraph g = BuildFlowGraph(Parse("executeQuery(\"x\" + sanitize_numeric(getParam(\"n\")));"));
  ASSERT_EQ(CountOrigin(g, NodeOrigin::kSanitize), 1u);
  for (const FlowNode& n : g.nodes()) {
    if (n.origin == NodeOrigin::kSanitize) {
      EXPECT_EQ(n.kind, FlowNodeKind::kAssign);
      EXPECT_EQ(n.sanitizer, SanitizerKind::kNumeric);
    }
  }
}

TEST(FlowGraph, DotOutputNamesNodes) {
  std::string dot = BuildFlowGraph(ParseCorpus("bookstore_mini.qs")).ToDot();
  EXPECT_EQ(dot.rfind("digraph flow {", 0), 0u);
  EXPECT_NE(dot.find("InitAnyString(author) r1"), std::string::npos);
}

// #InitAnyString == #getParam in value positions and #Concat == #'+' + #'+='.
TEST(FlowGraphProperty, NodeCountAccounting) {
  std::mt19937 rng(21);
  for (int i = 0; i < 300; ++i) {
    std::string src = i % 2 ? GenerateLoopFree(rng) : GenerateSqlShaped(rng);
    Program p = Parse(src);
    FlowGraph g = BuildFlowGraph(p);
    AstCounts c = CountNodes(p);
    EXPECT_EQ(CountKind(g, FlowNodeKind::kInitAnyString), ValueGetParams(p)) << src;
    EXPECT_EQ(CountKind(g, FlowNodeKind::kConcat), c.concats + c.concat_assigns) << src;
    EXPECT_EQ(g.Validate(), "") << src;
  }
}

// Every merge node's predecessors are exactly the definitions reaching that
// use along some path; uses reached by one definition get no merge node.
TEST(FlowGraphProperty, BranchMergeSoundness) {
  std::mt19937 rng(22);
  for (int i = 0; i < 200; ++i) {
    std::string src = GenerateLoopFree(rng);
    Program p = Parse(src);
    FlowGraph g = BuildFlowGraph(p);
    PathOracleResult oracle = EnumeratePaths(p, g);
    std::map<SourceLocation, std::set<SourceLocation>> merges;
    for (const FlowNode& n : g.nodes()) {
      if (n.origin != NodeOrigin::kMerge) continue;
      for (NodeId pred : n.preds) merges[n.loc].insert(g.node(pred).loc);
    }
    for (const auto& [use, defs] : oracle.reaching_defs) {
      auto it = merges.find(use);
      if (defs.size() == 1) {
        EXPECT_EQ(it, merges.end()) << src << "\nuse " << ToString(use);
      } else {
        ASSERT_NE(it, merges.end()) << src << "\nuse " << ToString(use);
        EXPECT_EQ(it->second, defs) << src << "\nuse " << ToString(use);
      }
    }
  }
}

}  // namespace
}  // namespace assistkit::testing
