#include "assistkit/interpreter.h"

#include <algorithm>
#include <utility>

#include "assistkit/sanitizers.h"

namespace assistkit {

TaintedString TaintedString::Clean(std::string text) {
  TaintedString s;
  s.taint.assign(text.size(), 0);
  s.text = std::move(text);
  return s;
}

TaintedString TaintedString::Tainted(std::string text, std::uint32_t id) {
  TaintedString s;
  s.taint.assign(text.size(), id);
  s.text = std::move(text);
  return s;
}

void TaintedString::Append(const TaintedString& other) {
  text += other.text;
  taint.insert(taint.end(), other.taint.begin(), other.taint.end());
}

bool TaintedString::IsTainted() const {
  return std::any_of(taint.begin(), taint.end(), [](std::uint32_t t) { return t != 0; });
}

RunError::RunError(SourceLocation loc, const std::string& message)
    : std::runtime_error(ToString(loc) + ": " + message), loc_(std::move(loc)) {}

namespace {

class Interpreter {
 public:
  Interpreter(const InputVector& inputs, const RunOptions& options)
      : inputs_(inputs), options_(options) {}

  RunResult Run(const Program& program) {
    RunBlock(program);
    return std::move(result_);
  }

 private:
  using Scope = std::map<std::string, TaintedString>;

  void Step(const SourceLocation& loc) {
    if (++result_.steps > options_.step_budget) throw RunError(loc, "step budget exhausted");
  }

  TaintedString* Lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto found = it->find(name); found != it->end()) return &found->second;
    }
    return nullptr;
  }

  TaintedString& Variable(const std::string& name, const SourceLocation& loc) {
    TaintedString* v = Lookup(name);
    if (v == nullptr) throw RunError(loc, "undeclared variable '" + name + "'");
    return *v;
  }

  void RunBlock(const std::vector<Stmt>& block) {
    scopes_.emplace_back();
    for (const Stmt& s : block) RunStmt(s);
    scopes_.pop_back();
  }

  void RunStmt(const Stmt& s) {
    Step(s.loc);
    switch (s.kind) {
      case Stmt::Kind::kVarDecl:
        scopes_.back()[s.name] = Eval(s.value);
        break;
      case Stmt::Kind::kAssign: {
        TaintedString v = Eval(s.value);
        Variable(s.name, s.loc) = std::move(v);
        break;
      }
      case Stmt::Kind::kConcatAssign: {
        TaintedString v = Eval(s.value);
        Variable(s.name, s.loc).Append(v);
        break;
      }
      case Stmt::Kind::kIf:
        if (Holds(s.cond)) {
          RunBlock(s.body);
        } else if (s.has_else) {
          RunBlock(s.else_body);
        }
        break;
      case Stmt::Kind::kWhile:
        while (Holds(s.cond)) {
          RunBlock(s.body);
          Step(s.loc);
        }
        break;
      case Stmt::Kind::kExecuteQuery:
        result_.queries.push_back(ExecutedQuery{Eval(s.value), s.loc});
        break;
    }
  }

  bool Holds(const Cond& c) {
    const std::string a = Eval(c.left).text;
    const std::string b = Eval(c.right).text;
    switch (c.op) {
      case CompareOp::kEq: return a == b;
      case CompareOp::kNe: return a != b;
      case CompareOp::kLt: return a < b;
      case CompareOp::kLe: return a <= b;
      case CompareOp::kGt: return a > b;
      case CompareOp::kGe: return a >= b;
    }
    return false;
  }

  TaintedString Eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::kStringLiteral:
        return TaintedString::Clean(e.text);
      case Expr::Kind::kVarRef:
        return Variable(e.text, e.loc);
      case Expr::Kind::kGetParam: {
        result_.taint_sources.push_back(e.text);
        auto id = static_cast<std::uint32_t>(result_.taint_sources.size());
        auto it = inputs_.find(e.text);
        return TaintedString::Tainted(it == inputs_.end() ? std::string() : it->second, id);
      }
      case Expr::Kind::kConcat: {
        TaintedString left = Eval(e.left());
        left.Append(Eval(e.right()));
        return left;
      }
      case Expr::Kind::kSanitize:
        return Sanitize(e.sanitizer, Eval(e.operand()));
    }
    return {};
  }

  static TaintedString Sanitize(SanitizerKind kind, const TaintedString& in) {
    if (kind == SanitizerKind::kNumeric) {
      if (IsNumeral(in.text)) return in;
      auto first = std::find_if(in.taint.begin(), in.taint.end(), [](std::uint32_t t) { return t != 0; });
      return TaintedString::Tainted("null", first == in.taint.end() ? 0 : *first);
    }
    std::vector<std::size_t> origins;
    TaintedString out;
    out.text = SanitizeStringTraced(in.text, origins);
    out.taint.reserve(origins.size());
    for (std::size_t o : origins) out.taint.push_back(in.taint[o]);
    return out;
  }

  const InputVector& inputs_;
  const RunOptions& options_;
  std::vector<Scope> scopes_;
  RunResult result_;
};

}  // namespace

RunResult RunProgram(const Program& program, const InputVector& inputs, const RunOptions& options) {
  return Interpreter(inputs, options).Run(program);
}

}  // namespace assistkit
