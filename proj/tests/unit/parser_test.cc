#include <random>

#include <gtest/gtest.h>

#include "assistkit/emitter.h"
#include "program_gen.h"
#include "test_util.h"

namespace assistkit::testing {
namespace {

TEST(Parser, BookstoreShape) {
  Program p = ParseCorpus("bookstore_mini.qs");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0].kind, Stmt::Kind::kVarDecl);
  EXPECT_EQ(p[1].kind, Stmt::Kind::kIf);
  EXPECT_TRUE(p[1].has_else);
  EXPECT_EQ(p[2].kind, Stmt::Kind::kExecuteQuery);
  AstCounts c = CountNodes(p);
  EXPECT_EQ(c.statements, 9u);
  EXPECT_EQ(c.get_params, 4u);  // two in conditions
  EXPECT_EQ(c.concat_assigns, 5u);
  EXPECT_EQ(c.execute_queries, 1u);
}

TEST(Parser, ConcatIsLeftAssociativeAndLocatedAtPlus) {
  Program p = Parse("var q = \"a\" + getParam(\"x\") + \"b\";");
  const Expr& e = p[0].value;
  ASSERT_EQ(e.kind, Expr::Kind::kConcat);
  EXPECT_EQ(e.left().kind, Expr::Kind::kConcat);
  EXPECT_EQ(e.right().text, "b");
  EXPECT_EQ(e.loc.column, 29);
  EXPECT_EQ(e.left().loc.column, 13);
}

TEST(Parser, LocationsRecordFileLineColumn) {
  Program p = Parse("var q = \"a\";\n  executeQuery(q);\n");
  EXPECT_EQ(ToString(p[1].loc), "t.qs:2:3");
  EXPECT_EQ(p[1].value.loc.line, 2);
  EXPECT_EQ(p[1].value.loc.column, 16);
}

TEST(Parser, StringEscapes) {
  Program p = Parse(R"(var q = "say \"hi\" \\ ";)");
  EXPECT_EQ(p[0].value.text, "say \"hi\" \\ ");
  EXPECT_THROW(Parse(R"(var q = "\n";)"), SyntaxError);
  EXPECT_THROW(Parse("var q = \"open"), SyntaxError);
}

TEST(Parser, CommentsAreSkipped) {
  Program p = Parse("// leading\nvar q = \"a\"; // trailing\n");
  EXPECT_EQ(p.size(), 1u);
}

TEST(Parser, ErrorMessagesNameExpectedAndFound) {
  try {
    Parse("var q = \"a\"\nexecuteQuery(q);");
    FAIL() << "no error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location().line, 2);
    EXPECT_NE(e.detail().find("expected ';' but found 'executeQuery'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(Parse("if (q) { }"), SyntaxError);           // missing operator
  EXPECT_THROW(Parse("while (a < b) { "), SyntaxError);     // unclosed block
  EXPECT_THROW(Parse("q ++ \"a\";"), SyntaxError);
  EXPECT_THROW(Parse("executeQuery(getParam(x));"), SyntaxError);
  EXPECT_THROW(Parse("var = \"a\";"), SyntaxError);
  EXPECT_THROW(Parse("var q = \"a\" $ \"b\";"), SyntaxError);
}

TEST(Parser, SanitizersOnlyWhenAllowed) {
  constexpr std::string_view src = "executeQuery(sanitize_string(getParam(\"a\")) + sanitize_numeric(\"1\"));";
  EXPECT_THROW(Parse(src, false), SyntaxError);
  Program p = Parse(src, true);
  EXPECT_EQ(CountNodes(p).sanitizers, 2u);
  EXPECT_EQ(p[0].value.left().sanitizer, SanitizerKind::kString);
  EXPECT_EQ(p[0].value.right().sanitizer, SanitizerKind::kNumeric);
}

TEST(Parser, EmptyProgram) {
  EXPECT_TRUE(Parse("").empty());
  EXPECT_TRUE(Parse("  // nothing\n").empty());
}

TEST(Emitter, CanonicalLayout) {
  Program p = Parse("var q=\"a\";if(getParam(\"x\")==\"1\"){q+=\"b\";}else{while(q<\"z\"){q=q+\"\\\"\";}}executeQuery(q);");
  EXPECT_EQ(EmitSource(p),
            "var q = \"a\";\n"
            "if (getParam(\"x\") == \"1\") {\n"
            "    q += \"b\";\n"
            "} else {\n"
            "    while (q < \"z\") {\n"
            "        q = q + \"\\\"\";\n"
            "    }\n"
            "}\n"
            "executeQuery(q);\n");
}

// parse(emit(parse(src))) is structurally identical to parse(src).
TEST(ParserProperty, RoundTripOverCorpus) {
  for (const char* name : {"bookstore_mini.qs", "bookstore_single.qs", "loop_example.qs", "login.qs",
                           "classifieds.qs", "events.qs", "portal.qs", "payroll.qs"}) {
    Program p = ParseCorpus(name);
    std::string emitted = EmitSource(p);
    Program again = Parse(emitted);
    EXPECT_TRUE(StructurallyEqual(p, again)) << name;
    EXPECT_EQ(EmitSource(again), emitted) << name;
  }
}

TEST(ParserProperty, RoundTripOnRandomPrograms) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    std::string src = i % 2 ? GenerateLoopFree(rng) : GenerateSqlShaped(rng);
    Program p = Parse(src);
    EXPECT_TRUE(StructurallyEqual(p, Parse(EmitSource(p)))) << src;
  }
}

TEST(ParserProperty, EveryNodeHasALocation) {
  std::mt19937 rng(12);
  for (int i = 0; i < 300; ++i) {
    std::string src = i % 2 ? GenerateLoopFree(rng) : GenerateSqlShaped(rng);
    AstCounts c = CountNodes(Parse(src));
    EXPECT_EQ(c.nodes_without_location, 0u) << src;
    EXPECT_GT(c.total_nodes(), 0u);
  }
  EXPECT_EQ(CountNodes(ParseCorpus("portal.qs")).nodes_without_location, 0u);
}

TEST(Ast, CountNodesSeesSynthesizedNodes) {
  Program p;
  p.push_back(Stmt::ExecuteQuery(Expr::Concat(Expr::StringLiteral("a"), Expr::GetParam("x"))));
  AstCounts c = CountNodes(p);
  EXPECT_EQ(c.statements, 1u);
  EXPECT_EQ(c.expressions, 3u);
  EXPECT_EQ(c.nodes_without_location, 4u);
}

TEST(Ast, IsIdentifier) {
  EXPECT_TRUE(IsIdentifier("q_1"));
  EXPECT_FALSE(IsIdentifier("1q"));
  EXPECT_FALSE(IsIdentifier(""));
}

}  // namespace
}  // namespace assistkit::testing
