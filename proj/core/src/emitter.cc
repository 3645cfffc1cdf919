#include "assistkit/emitter.h"

namespace assistkit {

std::string QuoteLiteral(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  out += '"';
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

void EmitExprTo(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::kStringLiteral:
      out += QuoteLiteral(e.text);
      return;
    case Expr::Kind::kVarRef:
      out += e.text;
      return;
    case Expr::Kind::kGetParam:
      out += "getParam(";
      out += QuoteLiteral(e.text);
      out += ')';
      return;
    case Expr::Kind::kConcat:
      EmitExprTo(e.left(), out);
      out += " + ";
      EmitExprTo(e.right(), out);
      return;
    case Expr::Kind::kSanitize:
      out += e.sanitizer == SanitizerKind::kString ? "sanitize_string(" : "sanitize_numeric(";
      EmitExprTo(e.operand(), out);
      out += ')';
      return;
  }
}

void Indent(int depth, std::string& out) { out.append(static_cast<std::size_t>(depth) * 4, ' '); }

void EmitBlock(const std::vector<Stmt>& body, int depth, std::string& out);

void EmitStmt(const Stmt& s, int depth, std::string& out) {
  Indent(depth, out);
  switch (s.kind) {
    case Stmt::Kind::kVarDecl:
      out += "var " + s.name + " = ";
      EmitExprTo(s.value, out);
      out += ";\n";
      return;
    case Stmt::Kind::kAssign:
      out += s.name + " = ";
      EmitExprTo(s.value, out);
      out += ";\n";
      return;
    case Stmt::Kind::kConcatAssign:
      out += s.name + " += ";
      EmitExprTo(s.value, out);
      out += ";\n";
      return;
    case Stmt::Kind::kExecuteQuery:
      out += "executeQuery(";
      EmitExprTo(s.value, out);
      out += ");\n";
      return;
    case Stmt::Kind::kIf:
    case Stmt::Kind::kWhile:
      out += s.kind == Stmt::Kind::kIf ? "if (" : "while (";
      EmitExprTo(s.cond.left, out);
      out += ' ';
      out += ToString(s.cond.op);
      out += ' ';
      EmitExprTo(s.cond.right, out);
      out += ") {\n";
      EmitBlock(s.body, depth + 1, out);
      Indent(depth, out);
      out += '}';
      if (s.kind == Stmt::Kind::kIf && s.has_else) {
        out += " else {\n";
        EmitBlock(s.else_body, depth + 1, out);
        Indent(depth, out);
        out += '}';
      }
      out += '\n';
      return;
  }
}

void EmitBlock(const std::vector<Stmt>& body, int depth, std::string& out) {
  for (const Stmt& s : body) EmitStmt(s, depth, out);
}

}  // namespace

std::string EmitExpr(const Expr& expr) {
  std::string out;
  EmitExprTo(expr, out);
  return out;
}

std::string EmitSource(const Program& program) {
  std::string out;
  EmitBlock(program, 0, out);
  return out;
}

}  // namespace assistkit
