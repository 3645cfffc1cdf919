#include "assistkit/ast.h"

#include <utility>

namespace assistkit {

std::string ToString(const SourceLocation& loc) {
  std::string out = loc.file.empty() ? std::string("<input>") : loc.file;
  out += ':';
  out += std::to_string(loc.line);
  out += ':';
  out += std::to_string(loc.column);
  return out;
}

std::string_view ToString(SanitizerKind kind) {
  switch (kind) {
    case SanitizerKind::kString:
      return "string";
    case SanitizerKind::kNumeric:
      return "numeric";
  }
  return "?";
}

std::string_view ToString(CompareOp op) {
  switch (op) {
    case CompareOp::kEq:
      return "==";
    case CompareOp::kNe:
      return "!=";
    case CompareOp::kLt:
      return "<";
    case CompareOp::kLe:
      return "<=";
    case CompareOp::kGt:
      return ">";
    case CompareOp::kGe:
      return ">=";
  }
  return "?";
}

Expr Expr::StringLiteral(std::string text, SourceLocation loc) {
  Expr e;
  e.kind = Kind::kStringLiteral;
  e.text = std::move(text);
  e.loc = std::move(loc);
  return e;
}

Expr Expr::VarRef(std::string name, SourceLocation loc) {
  Expr e;
  e.kind = Kind::kVarRef;
  e.text = std::move(name);
  e.loc = std::move(loc);
  return e;
}

Expr Expr::GetParam(std::string param, SourceLocation loc) {
  Expr e;
  e.kind = Kind::kGetParam;
  e.text = std::move(param);
  e.loc = std::move(loc);
  return e;
}

Expr Expr::Concat(Expr left, Expr right, SourceLocation loc) {
  Expr e;
  e.kind = Kind::kConcat;
  e.operands.reserve(2);
  e.operands.push_back(std::move(left));
  e.operands.push_back(std::move(right));
  e.loc = std::move(loc);
  return e;
}

Expr Expr::Sanitize(SanitizerKind kind, Expr operand, SourceLocation loc) {
  Expr e;
  e.kind = Kind::kSanitize;
  e.sanitizer = kind;
  e.operands.push_back(std::move(operand));
  e.loc = std::move(loc);
  return e;
}

namespace {

Stmt MakeDefinition(Stmt::Kind kind, std::string name, Expr value, SourceLocation loc) {
  Stmt s;
  s.kind = kind;
  s.name = std::move(name);
  s.value = std::move(value);
  s.loc = std::move(loc);
  return s;
}

}  // namespace

Stmt Stmt::VarDecl(std::string name, Expr value, SourceLocation loc) {
  return MakeDefinition(Kind::kVarDecl, std::move(name), std::move(value), std::move(loc));
}

Stmt Stmt::Assign(std::string name, Expr value, SourceLocation loc) {
  return MakeDefinition(Kind::kAssign, std::move(name), std::move(value), std::move(loc));
}

Stmt Stmt::ConcatAssign(std::string name, Expr value, SourceLocation loc) {
  return MakeDefinition(Kind::kConcatAssign, std::move(name), std::move(value),
                        std::move(loc));
}

Stmt Stmt::If(Cond cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body,
              bool has_else, SourceLocation loc) {
  Stmt s;
  s.kind = Kind::kIf;
  s.cond = std::move(cond);
  s.body = std::move(then_body);
  s.else_body = std::move(else_body);
  s.has_else = has_else || !s.else_body.empty();
  s.loc = std::move(loc);
  return s;
}

Stmt Stmt::While(Cond cond, std::vector<Stmt> body, SourceLocation loc) {
  Stmt s;
  s.kind = Kind::kWhile;
  s.cond = std::move(cond);
  s.body = std::move(body);
  s.loc = std::move(loc);
  return s;
}

Stmt Stmt::ExecuteQuery(Expr query, SourceLocation loc) {
  Stmt s;
  s.kind = Kind::kExecuteQuery;
  s.value = std::move(query);
  s.loc = std::move(loc);
  return s;
}

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.operands.size() != b.operands.size()) {
    return false;
  }
  if (a.kind == Expr::Kind::kSanitize && a.sanitizer != b.sanitizer) return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (!StructurallyEqual(a.operands[i], b.operands[i])) return false;
  }
  return true;
}

bool StructurallyEqual(const Cond& a, const Cond& b) {
  return a.op == b.op && StructurallyEqual(a.left, b.left) &&
         StructurallyEqual(a.right, b.right);
}

bool StructurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::kVarDecl:
    case Stmt::Kind::kAssign:
    case Stmt::Kind::kConcatAssign:
      return a.name == b.name && StructurallyEqual(a.value, b.value);
    case Stmt::Kind::kExecuteQuery:
      return StructurallyEqual(a.value, b.value);
    case Stmt::Kind::kIf:
      return a.has_else == b.has_else && StructurallyEqual(a.cond, b.cond) &&
             StructurallyEqual(a.body, b.body) && StructurallyEqual(a.else_body, b.else_body);
    case Stmt::Kind::kWhile:
      return StructurallyEqual(a.cond, b.cond) && StructurallyEqual(a.body, b.body);
  }
  return false;
}

bool StructurallyEqual(const Program& a, const Program& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(a[i], b[i])) return false;
  }
  return true;
}

namespace {

bool Located(const SourceLocation& loc) { return loc.line >= 1 && loc.column >= 1; }

void Count(const Expr& e, AstCounts& counts) {
  ++counts.expressions;
  if (!Located(e.loc)) ++counts.nodes_without_location;
  switch (e.kind) {
    case Expr::Kind::kGetParam:
      ++counts.get_params;
      break;
    case Expr::Kind::kConcat:
      ++counts.concats;
      break;
    case Expr::Kind::kSanitize:
      ++counts.sanitizers;
      break;
    default:
      break;
  }
  for (const Expr& child : e.operands) Count(child, counts);
}

void Count(const Program& program, AstCounts& counts);

void Count(const Stmt& s, AstCounts& counts) {
  ++counts.statements;
  if (!Located(s.loc)) ++counts.nodes_without_location;
  switch (s.kind) {
    case Stmt::Kind::kConcatAssign:
      ++counts.concat_assigns;
      Count(s.value, counts);
      break;
    case Stmt::Kind::kExecuteQuery:
      ++counts.execute_queries;
      Count(s.value, counts);
      break;
    case Stmt::Kind::kVarDecl:
    case Stmt::Kind::kAssign:
      Count(s.value, counts);
      break;
    case Stmt::Kind::kIf:
    case Stmt::Kind::kWhile:
      ++counts.conditions;
      if (!Located(s.cond.loc)) ++counts.nodes_without_location;
      Count(s.cond.left, counts);
      Count(s.cond.right, counts);
      Count(s.body, counts);
      Count(s.else_body, counts);
      break;
  }
}

void Count(const Program& program, AstCounts& counts) {
  for (const Stmt& s : program) Count(s, counts);
}

}  // namespace

AstCounts CountNodes(const Program& program) {
  AstCounts counts;
  Count(program, counts);
  return counts;
}

bool IsIdentifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(text.front())) return false;
  for (char c : text) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

}  // namespace assistkit
