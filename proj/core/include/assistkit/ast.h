// QScript abstract syntax tree.
//
// QScript is a small imperative language whose only value type is the
// string. Programs read request parameters with getParam, build queries by
// concatenation and hand them to executeQuery.

#ifndef ASSISTKIT_AST_H_
#define ASSISTKIT_AST_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace assistkit {

struct SourceLocation {
  std::string file;
  int line = 0;  // 0 marks a synthesized node
  int column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
  friend auto operator<=>(const SourceLocation& a, const SourceLocation& b) {
    if (auto c = a.line <=> b.line; c != 0) return c;
    if (auto c = a.column <=> b.column; c != 0) return c;
    return a.file <=> b.file;
  }
};

std::string ToString(const SourceLocation& loc);

enum class SanitizerKind { kString, kNumeric };

std::string_view ToString(SanitizerKind kind);

enum class CompareOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view ToString(CompareOp op);

struct Expr {
  enum class Kind { kStringLiteral, kVarRef, kGetParam, kConcat, kSanitize };

  Kind kind = Kind::kStringLiteral;
  // Literal text, variable name or parameter name, depending on kind.
  std::string text;
  // Only meaningful for kSanitize.
  SanitizerKind sanitizer = SanitizerKind::kString;
  // kConcat: {left, right}. kSanitize: {operand}. Empty otherwise.
  std::vector<Expr> operands;
  // For kConcat this is the location of the '+' operator.
  SourceLocation loc;

  static Expr StringLiteral(std::string text, SourceLocation loc = {});
  static Expr VarRef(std::string name, SourceLocation loc = {});
  static Expr GetParam(std::string param, SourceLocation loc = {});
  static Expr Concat(Expr left, Expr right, SourceLocation loc = {});
  static Expr Sanitize(SanitizerKind kind, Expr operand, SourceLocation loc = {});

  const Expr& left() const { return operands.at(0); }
  const Expr& right() const { return operands.at(1); }
  const Expr& operand() const { return operands.at(0); }
  Expr& left() { return operands.at(0); }
  Expr& right() { return operands.at(1); }
  Expr& operand() { return operands.at(0); }
};

struct Cond {
  Expr left;
  CompareOp op = CompareOp::kEq;
  Expr right;
  SourceLocation loc;
};

struct Stmt {
  enum class Kind { kVarDecl, kAssign, kConcatAssign, kIf, kWhile, kExecuteQuery };

  Kind kind = Kind::kExecuteQuery;
  // Target variable for kVarDecl, kAssign and kConcatAssign.
  std::string name;
  // Right-hand side, or the executeQuery argument.
  Expr value;
  // kIf / kWhile only.
  Cond cond;
  std::vector<Stmt> body;       // then-branch or loop body
  std::vector<Stmt> else_body;  // kIf only
  bool has_else = false;
  SourceLocation loc;

  static Stmt VarDecl(std::string name, Expr value, SourceLocation loc = {});
  static Stmt Assign(std::string name, Expr value, SourceLocation loc = {});
  static Stmt ConcatAssign(std::string name, Expr value, SourceLocation loc = {});
  static Stmt If(Cond cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body,
                 bool has_else, SourceLocation loc = {});
  static Stmt While(Cond cond, std::vector<Stmt> body, SourceLocation loc = {});
  static Stmt ExecuteQuery(Expr query, SourceLocation loc = {});
};

using Program = std::vector<Stmt>;

// Equality that ignores source locations.
bool StructurallyEqual(const Expr& a, const Expr& b);
bool StructurallyEqual(const Cond& a, const Cond& b);
bool StructurallyEqual(const Stmt& a, const Stmt& b);
bool StructurallyEqual(const Program& a, const Program& b);

struct AstCounts {
  std::size_t statements = 0;
  std::size_t expressions = 0;
  std::size_t conditions = 0;
  std::size_t get_params = 0;
  std::size_t concats = 0;           // binary '+' expressions
  std::size_t concat_assigns = 0;    // '+=' statements
  std::size_t sanitizers = 0;
  std::size_t execute_queries = 0;
  std::size_t nodes_without_location = 0;

  std::size_t total_nodes() const { return statements + expressions + conditions; }
};

AstCounts CountNodes(const Program& program);

bool IsIdentifier(std::string_view text);

}  // namespace assistkit

#endif  // ASSISTKIT_AST_H_
