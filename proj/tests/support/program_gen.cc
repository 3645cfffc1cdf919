#include "program_gen.h"

#include <algorithm>
#include <utility>
#include <vector>

namespace assistkit::testing {

namespace {

int Uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool Chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& Pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(Uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

class LoopFreeGen {
 public:
  LoopFreeGen(std::mt19937& rng, const GenOptions& o)
      : rng_(rng), o_(o), branches_(o.max_branches), concats_(o.max_concats) {}

  std::string Run() {
    for (int v = 0; v < o_.variables; ++v) Line("var v" + std::to_string(v) + " = " + Expr(false) + ";");
    int n = Uniform(rng_, 2, 6);
    for (int i = 0; i < n; ++i) Statement(0);
    Line("executeQuery(" + Expr(true) + ");");
    return out_;
  }

 private:
  void Line(const std::string& s) { out_ += std::string(static_cast<std::size_t>(indent_) * 4, ' ') + s + "\n"; }

  std::string Var() { return "v" + std::to_string(Uniform(rng_, 0, o_.variables - 1)); }

  std::string Atom(bool allow_var, bool& used_var) {
    static const std::vector<std::string> kLiterals = {"", "a", "b'", "SELECT ", " WHERE x = '", "'", " OR ", "\\\\"};
    int k = Uniform(rng_, 0, 2);
    if (k == 0 && allow_var && !used_var) {
      used_var = true;
      return Var();
    }
    if (k == 1) return "getParam(\"p" + std::to_string(Uniform(rng_, 0, o_.params - 1)) + "\")";
    return Quote(Pick(rng_, kLiterals));
  }

  // A left-associated chain; at most one operand is a variable.
  std::string Expr(bool allow_var) {
    bool used_var = false;
    std::string e = Atom(allow_var, used_var);
    while (concats_ > 0 && Chance(rng_, 0.35)) {
      --concats_;
      e += " + " + Atom(allow_var, used_var);
    }
    return e;
  }

  void Statement(int depth) {
    int k = Uniform(rng_, 0, 9);
    if (k <= 2 && branches_ > 0 && depth < o_.max_depth) {
      --branches_;
      Line("if (getParam(\"c" + std::to_string(Uniform(rng_, 0, 2)) + "\") == \"y\") {");
      Body(depth + 1);
      if (Chance(rng_, 0.5)) {
        Line("} else {");
        Body(depth + 1);
      }
      Line("}");
    } else if (k <= 5 && concats_ > 0) {
      --concats_;
      Line(Var() + " += " + Expr(false) + ";");
    } else if (k <= 8) {
      Line(Var() + " = " + Expr(true) + ";");
    } else {
      Line("executeQuery(" + Expr(true) + ");");
    }
  }

  void Body(int depth) {
    ++indent_;
    int n = Uniform(rng_, 1, 3);
    for (int i = 0; i < n; ++i) Statement(depth);
    --indent_;
  }

  std::mt19937& rng_;
  const GenOptions& o_;
  int branches_;
  int concats_;
  int indent_ = 0;
  std::string out_;
};

}  // namespace

std::string GenerateLoopFree(std::mt19937& rng, const GenOptions& options) {
  return LoopFreeGen(rng, options).Run();
}

Schema SqlShapedSchema() { return LoadSchema("TABLE T (s STRING, t STRING, n NUMERIC, m NUMERIC);"); }

std::string GenerateSqlShaped(std::mt19937& rng) {
  int next_p = 0;
  int next_q = 0;
  auto string_value = [&] { return "\"'\" + getParam(\"p" + std::to_string(next_p++ % 6) + "\") + \"'\""; };
  auto numeric_value = [&] { return "getParam(\"q" + std::to_string(next_q++ % 6) + "\")"; };
  auto comparison = [&] {
    static const std::vector<std::string> kStringCols = {"s", "t"};
    static const std::vector<std::string> kNumCols = {"n", "m"};
    static const std::vector<std::string> kOps = {" = ", " <> ", " < ", " >= "};
    if (Chance(rng, 0.5)) return "\"" + Pick(rng, kStringCols) + " = \" + " + string_value();
    return "\"" + Pick(rng, kNumCols) + Pick(rng, kOps) + "\" + " + numeric_value();
  };
  auto cond = [&] { return "getParam(\"c" + std::to_string(Uniform(rng, 0, 3)) + "\") == \"y\""; };

  std::string out;
  int shape = Uniform(rng, 0, 2);
  if (shape == 0) {
    out += "var q = \"SELECT * FROM T WHERE \";\n";
  } else if (shape == 1) {
    out += "var q = \"DELETE FROM T WHERE \";\n";
  } else {
    out += "var q = \"UPDATE T SET \";\n";
    out += Chance(rng, 0.5) ? "q += \"s = \" + " + string_value() + ";\n"
                            : "q += \"n = \" + " + numeric_value() + ";\n";
    out += "q += \" WHERE \";\n";
  }
  // The first clause is always present; later ones are joined by AND/OR.
  out += "if (" + cond() + ") {\n    q += " + comparison() + ";\n} else {\n    q += " + comparison() + ";\n}\n";
  int extra = Uniform(rng, 0, 3);
  for (int i = 0; i < extra; ++i) {
    std::string join = Chance(rng, 0.5) ? "\" AND \"" : "\" OR \"";
    if (Chance(rng, 0.5)) {
      out += "if (" + cond() + ") {\n    q += " + join + " + " + comparison() + ";\n}\n";
    } else {
      out += "var w" + std::to_string(i) + " = " + comparison() + ";\n";
      out += "q += " + join + " + w" + std::to_string(i) + ";\n";
    }
  }
  if (Chance(rng, 0.3)) out += "q += \";\";\n";
  out += "executeQuery(q);\n";
  return out;
}

std::string RandomString(std::mt19937& rng, std::size_t max_len, std::string_view alphabet) {
  std::size_t len = static_cast<std::size_t>(Uniform(rng, 0, static_cast<int>(max_len)));
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    s += alphabet[static_cast<std::size_t>(Uniform(rng, 0, static_cast<int>(alphabet.size()) - 1))];
  }
  return s;
}

InputVector CleanInputs(std::mt19937& rng) {
  InputVector in;
  for (int i = 0; i < 6; ++i) {
    in["p" + std::to_string(i)] = RandomString(rng, 8, "abcXYZ 019-_.,;()=<>");
    std::string num = std::to_string(Uniform(rng, -500, 500));
    if (Chance(rng, 0.3)) num += "." + std::to_string(Uniform(rng, 0, 99));
    in["q" + std::to_string(i)] = num;
  }
  for (int i = 0; i < 4; ++i) in["c" + std::to_string(i)] = Chance(rng, 0.5) ? "y" : "n";
  return in;
}

InputVector HostileInputs(std::mt19937& rng) {
  static const std::vector<std::string> kPayloads = {
      "' OR '1'='1", "';DROP TABLE T;--", "\\' OR 1=1", "1 OR 1=1", "0; DELETE FROM T", "x\\", "\"", "'", "\\\\'"};
  InputVector in;
  for (int i = 0; i < 6; ++i) {
    in["p" + std::to_string(i)] = Chance(rng, 0.5) ? Pick(rng, kPayloads) : RandomString(rng, 10, "ab'\"\\ ;-=");
    in["q" + std::to_string(i)] = Chance(rng, 0.5) ? Pick(rng, kPayloads) : RandomString(rng, 6, "0129 -.'OR=");
  }
  for (int i = 0; i < 4; ++i) in["c" + std::to_string(i)] = Chance(rng, 0.5) ? "y" : "n";
  return in;
}

namespace {

FlowGraph RandomGraph(std::mt19937& rng, std::size_t n, bool cyclic) {
  FlowGraph g;
  std::vector<std::vector<NodeId>> preds(n);
  for (std::size_t i = 0; i < n; ++i) {
    FlowNode node;
    node.loc = SourceLocation{"random", static_cast<int>(i) + 1, 1};
    // Acyclic graphs need sources among the first nodes.
    bool leaf = i < 2 || Chance(rng, 0.33);
    std::size_t bound = cyclic ? n - 1 : i - (leaf ? 0 : 1);
    auto pick = [&] { return MakeNodeId(static_cast<std::size_t>(Uniform(rng, 0, static_cast<int>(bound)))); };
    if (leaf) {
      bool input = Chance(rng, 0.4);
      node.kind = input ? FlowNodeKind::kInitAnyString : FlowNodeKind::kInitLiteral;
      node.origin = input ? NodeOrigin::kGetParam : NodeOrigin::kLiteral;
      node.text = input ? "p" : std::string(1, static_cast<char>('a' + i % 26));
    } else if (Chance(rng, 0.5)) {
      node.kind = FlowNodeKind::kConcat;
      node.origin = NodeOrigin::kConcatExpr;
      preds[i] = {pick(), pick()};
    } else {
      node.kind = FlowNodeKind::kAssign;
      node.origin = NodeOrigin::kMerge;
      node.text = "v";
      int k = Uniform(rng, 1, 3);
      for (int j = 0; j < k; ++j) preds[i].push_back(pick());
    }
    g.AddNode(std::move(node));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!preds[i].empty()) g.SetPreds(MakeNodeId(i), std::move(preds[i]));
  }
  g.AddExecPoint(ExecPoint{MakeNodeId(n - 1), SourceLocation{"random", static_cast<int>(n), 1}});
  g.Finalize();
  return g;
}

}  // namespace

FlowGraph RandomCyclicGraph(std::mt19937& rng, std::size_t nodes) { return RandomGraph(rng, nodes, true); }
FlowGraph RandomAcyclicGraph(std::mt19937& rng, std::size_t nodes) { return RandomGraph(rng, nodes, false); }

}  // namespace assistkit::testing
