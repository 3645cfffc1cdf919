#include "assistkit/parser.h"

#include <optional>
#include <utility>
#include <vector>

namespace assistkit {

SyntaxError::SyntaxError(SourceLocation loc, const std::string& message)
    : std::runtime_error(ToString(loc) + ": syntax error: " + message),
      loc_(std::move(loc)),
      detail_(message) {}

namespace {

enum class Tok {
  kIdent,
  kString,
  kKwVar,
  kKwIf,
  kKwElse,
  kKwWhile,
  kKwExecuteQuery,
  kKwGetParam,
  kKwSanitizeString,
  kKwSanitizeNumeric,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kSemicolon,
  kPlus,
  kPlusAssign,
  kAssign,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kEnd,
};

std::string Describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kString: return "string literal";
    case Tok::kKwVar: return "'var'";
    case Tok::kKwIf: return "'if'";
    case Tok::kKwElse: return "'else'";
    case Tok::kKwWhile: return "'while'";
    case Tok::kKwExecuteQuery: return "'executeQuery'";
    case Tok::kKwGetParam: return "'getParam'";
    case Tok::kKwSanitizeString: return "'sanitize_string'";
    case Tok::kKwSanitizeNumeric: return "'sanitize_numeric'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kSemicolon: return "';'";
    case Tok::kPlus: return "'+'";
    case Tok::kPlusAssign: return "'+='";
    case Tok::kAssign: return "'='";
    case Tok::kEq: return "'=='";
    case Tok::kNe: return "'!='";
    case Tok::kLt: return "'<'";
    case Tok::kLe: return "'<='";
    case Tok::kGt: return "'>'";
    case Tok::kGe: return "'>='";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceLocation loc;
};

std::optional<Tok> Keyword(std::string_view word) {
  if (word == "var") return Tok::kKwVar;
  if (word == "if") return Tok::kKwIf;
  if (word == "else") return Tok::kKwElse;
  if (word == "while") return Tok::kKwWhile;
  if (word == "executeQuery") return Tok::kKwExecuteQuery;
  if (word == "getParam") return Tok::kKwGetParam;
  if (word == "sanitize_string") return Tok::kKwSanitizeString;
  if (word == "sanitize_numeric") return Tok::kKwSanitizeNumeric;
  return std::nullopt;
}

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipTrivia();
      Token t;
      t.loc = Here();
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[pos_];
      if (IsIdentStart(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && IsIdentChar(src_[pos_])) Advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        t.kind = Keyword(t.text).value_or(Tok::kIdent);
      } else if (c == '"') {
        t.kind = Tok::kString;
        t.text = LexString(t.loc);
      } else {
        t.kind = LexPunct(t.loc);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool IsIdentStart(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

  SourceLocation Here() const { return SourceLocation{file_, line_, column_}; }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      // Columns count code points, not UTF-8 continuation bytes.
      ++column_;
    }
    ++pos_;
  }

  void SkipTrivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        Advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  std::string LexString(const SourceLocation& start) {
    Advance();  // opening quote
    std::string text;
    for (;;) {
      if (pos_ >= src_.size()) throw SyntaxError(start, "unterminated string literal");
      char c = src_[pos_];
      if (c == '"') {
        Advance();
        return text;
      }
      if (c == '\\') {
        SourceLocation esc = Here();
        Advance();
        if (pos_ >= src_.size()) throw SyntaxError(start, "unterminated string literal");
        char next = src_[pos_];
        if (next != '"' && next != '\\') {
          throw SyntaxError(esc, "invalid escape sequence (only \\\" and \\\\ are allowed)");
        }
        text += next;
        Advance();
        continue;
      }
      text += c;
      Advance();
    }
  }

  Tok LexPunct(const SourceLocation& loc) {
    char c = src_[pos_];
    char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    auto one = [&](Tok t) {
      Advance();
      return t;
    };
    auto two = [&](Tok t) {
      Advance();
      Advance();
      return t;
    };
    switch (c) {
      case '(': return one(Tok::kLParen);
      case ')': return one(Tok::kRParen);
      case '{': return one(Tok::kLBrace);
      case '}': return one(Tok::kRBrace);
      case ';': return one(Tok::kSemicolon);
      case '+': return next == '=' ? two(Tok::kPlusAssign) : one(Tok::kPlus);
      case '=': return next == '=' ? two(Tok::kEq) : one(Tok::kAssign);
      case '!':
        if (next == '=') return two(Tok::kNe);
        break;
      case '<': return next == '=' ? two(Tok::kLe) : one(Tok::kLt);
      case '>': return next == '=' ? two(Tok::kGe) : one(Tok::kGt);
      default:
        break;
    }
    throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : toks_(std::move(tokens)), options_(options) {}

  Program ParseAll() {
    Program program;
    while (Peek().kind != Tok::kEnd) program.push_back(ParseStmt());
    return program;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  Token Take() {
    Token t = Peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void Fail(const Token& at, const std::string& expected) const {
    std::string found = Describe(at.kind);
    if (at.kind == Tok::kIdent) found += " '" + at.text + "'";
    throw SyntaxError(at.loc, "expected " + expected + " but found " + found);
  }

  Token Expect(Tok kind) {
    if (Peek().kind != kind) Fail(Peek(), Describe(kind));
    return Take();
  }

  Stmt ParseStmt() {
    const Token& t = Peek();
    switch (t.kind) {
      case Tok::kKwVar: {
        SourceLocation loc = Take().loc;
        std::string name = Expect(Tok::kIdent).text;
        Expect(Tok::kAssign);
        Expr value = ParseExpr();
        Expect(Tok::kSemicolon);
        return Stmt::VarDecl(std::move(name), std::move(value), std::move(loc));
      }
      case Tok::kIdent: {
        Token name = Take();
        if (Peek().kind == Tok::kAssign) {
          Take();
          Expr value = ParseExpr();
          Expect(Tok::kSemicolon);
          return Stmt::Assign(name.text, std::move(value), name.loc);
        }
        if (Peek().kind == Tok::kPlusAssign) {
          Take();
          Expr value = ParseExpr();
          Expect(Tok::kSemicolon);
          return Stmt::ConcatAssign(name.text, std::move(value), name.loc);
        }
        Fail(Peek(), "'=' or '+='");
      }
      case Tok::kKwIf: {
        SourceLocation loc = Take().loc;
        Expect(Tok::kLParen);
        Cond cond = ParseCond();
        Expect(Tok::kRParen);
        std::vector<Stmt> then_body = ParseBlock();
        std::vector<Stmt> else_body;
        bool has_else = false;
        if (Peek().kind == Tok::kKwElse) {
          Take();
          has_else = true;
          else_body = ParseBlock();
        }
        return Stmt::If(std::move(cond), std::move(then_body), std::move(else_body), has_else,
                        std::move(loc));
      }
      case Tok::kKwWhile: {
        SourceLocation loc = Take().loc;
        Expect(Tok::kLParen);
        Cond cond = ParseCond();
        Expect(Tok::kRParen);
        std::vector<Stmt> body = ParseBlock();
        return Stmt::While(std::move(cond), std::move(body), std::move(loc));
      }
      case Tok::kKwExecuteQuery: {
        SourceLocation loc = Take().loc;
        Expect(Tok::kLParen);
        Expr query = ParseExpr();
        Expect(Tok::kRParen);
        Expect(Tok::kSemicolon);
        return Stmt::ExecuteQuery(std::move(query), std::move(loc));
      }
      default:
        Fail(t, "statement");
    }
  }

  std::vector<Stmt> ParseBlock() {
    Expect(Tok::kLBrace);
    std::vector<Stmt> body;
    while (Peek().kind != Tok::kRBrace) {
      if (Peek().kind == Tok::kEnd) Fail(Peek(), "'}'");
      body.push_back(ParseStmt());
    }
    Take();
    return body;
  }

  Cond ParseCond() {
    Cond cond;
    cond.loc = Peek().loc;
    cond.left = ParseExpr();
    switch (Peek().kind) {
      case Tok::kEq: cond.op = CompareOp::kEq; break;
      case Tok::kNe: cond.op = CompareOp::kNe; break;
      case Tok::kLt: cond.op = CompareOp::kLt; break;
      case Tok::kLe: cond.op = CompareOp::kLe; break;
      case Tok::kGt: cond.op = CompareOp::kGt; break;
      case Tok::kGe: cond.op = CompareOp::kGe; break;
      default:
        Fail(Peek(), "comparison operator");
    }
    Take();
    cond.right = ParseExpr();
    return cond;
  }

  Expr ParseExpr() {
    Expr left = ParseTerm();
    while (Peek().kind == Tok::kPlus) {
      SourceLocation loc = Take().loc;
      Expr right = ParseTerm();
      left = Expr::Concat(std::move(left), std::move(right), std::move(loc));
    }
    return left;
  }

  Expr ParseTerm() {
    const Token& t = Peek();
    switch (t.kind) {
      case Tok::kString: {
        Token lit = Take();
        return Expr::StringLiteral(std::move(lit.text), std::move(lit.loc));
      }
      case Tok::kIdent: {
        Token id = Take();
        return Expr::VarRef(std::move(id.text), std::move(id.loc));
      }
      case Tok::kKwGetParam: {
        SourceLocation loc = Take().loc;
        Expect(Tok::kLParen);
        std::string name = Expect(Tok::kString).text;
        Expect(Tok::kRParen);
        return Expr::GetParam(std::move(name), std::move(loc));
      }
      case Tok::kKwSanitizeString:
      case Tok::kKwSanitizeNumeric: {
        if (!options_.allow_sanitizers) {
          throw SyntaxError(t.loc, Describe(t.kind) +
                                       " is only accepted in instrumented programs "
                                       "(--allow-sanitizers)");
        }
        SanitizerKind kind = t.kind == Tok::kKwSanitizeString ? SanitizerKind::kString
                                                                : SanitizerKind::kNumeric;
        SourceLocation loc = Take().loc;
        Expect(Tok::kLParen);
        Expr operand = ParseExpr();
        Expect(Tok::kRParen);
        return Expr::Sanitize(kind, std::move(operand), std::move(loc));
      }
      default:
        Fail(t, "expression");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& options_;
};

}  // namespace

Program ParseProgram(std::string_view source, const ParseOptions& options) {
  Lexer lexer(source, options.file);
  Parser parser(lexer.Run(), options);
  return parser.ParseAll();
}

}  // namespace assistkit
