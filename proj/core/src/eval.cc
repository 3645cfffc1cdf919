#include "assistkit/eval.h"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <thread>
#include <utility>

#include "assistkit/sanitizers.h"
#include "assistkit/sql.h"

namespace assistkit {

std::string_view ToString(Classification c) {
  switch (c) {
    case Classification::kAttackNeutralized: return "attack-neutralized";
    case Classification::kAttackUnchanged: return "attack-unchanged";
    case Classification::kLegitUnchanged: return "legit-unchanged";
    case Classification::kLegitModified: return "legit-modified";
  }
  return "?";
}

namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct Run {
  bool tainted = false;
  std::string text;
};

std::vector<Run> Runs(const TaintedString& s) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < s.text.size(); ++i) {
    bool t = s.taint[i] != 0;
    if (runs.empty() || runs.back().tainted != t) runs.push_back(Run{t, {}});
    runs.back().text += s.text[i];
  }
  return runs;
}

std::string Unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() &&
        (s[i + 1] == '\\' || kEscapableQuotes.find(s[i + 1]) != std::string_view::npos)) {
      ++i;
    }
    out += s[i];
  }
  return out;
}

struct RunCapture {
  std::vector<TaintedString> queries;
  std::string error;
};

RunCapture Capture(const Program& program, const InputVector& params, const RunOptions& options) {
  RunCapture c;
  try {
    for (ExecutedQuery& q : RunProgram(program, params, options).queries) {
      c.queries.push_back(std::move(q.query));
    }
  } catch (const RunError& e) {
    c.error = e.what();
  }
  return c;
}

std::vector<std::string> Texts(const std::vector<TaintedString>& queries) {
  std::vector<std::string> out;
  for (const TaintedString& q : queries) out.push_back(q.text);
  return out;
}

bool AnyEscapes(const std::vector<TaintedString>& queries, const Schema& schema) {
  return std::any_of(queries.begin(), queries.end(),
                     [&](const TaintedString& q) { return EscapesValueToken(q, schema); });
}

InputOutcome EvaluateOne(const Program& original, const Program& instrumented, const Schema& schema,
                         const TestInput& input, const RunOptions& options) {
  RunCapture a = Capture(original, input.params, options);
  RunCapture b = Capture(instrumented, input.params, options);
  InputOutcome out;
  out.input = input;
  out.original_error = a.error;
  out.instrumented_error = b.error;
  out.original_queries = Texts(a.queries);
  out.instrumented_queries = Texts(b.queries);
  out.original_compromised = AnyEscapes(a.queries, schema);
  out.instrumented_compromised = AnyEscapes(b.queries, schema);

  bool same_bytes = out.original_queries == out.instrumented_queries && a.error == b.error;
  if (input.label == InputLabel::kAttack) {
    out.classification =
        same_bytes ? Classification::kAttackUnchanged : Classification::kAttackNeutralized;
  } else {
    out.classification = same_bytes ? Classification::kLegitUnchanged : Classification::kLegitModified;
    bool same_structure = a.queries.size() == b.queries.size() && a.error == b.error;
    for (std::size_t i = 0; same_structure && i < a.queries.size(); ++i) {
      same_structure = SameQueryStructure(a.queries[i], b.queries[i]);
    }
    out.structurally_modified = !same_structure;
  }
  return out;
}

}  // namespace

bool EscapesValueToken(const TaintedString& query, const Schema& schema) {
  if (!query.IsTainted()) return false;
  ConcreteParse parsed = ParseConcreteQuery(query.text, schema);
  if (!parsed.valid) return true;
  // Token index of each byte that sits inside a value token's contents.
  std::vector<std::optional<std::size_t>> owner(query.text.size());
  for (std::size_t t = 0; t < parsed.tokens.size(); ++t) {
    const SqlToken& tok = parsed.tokens[t];
    if (!tok.IsValue()) continue;
    for (std::size_t i = tok.content_begin; i < tok.content_end; ++i) owner[i] = t;
  }
  std::map<std::uint32_t, std::size_t> token_of;
  for (std::size_t i = 0; i < query.text.size(); ++i) {
    std::uint32_t id = query.taint[i];
    if (id == 0) continue;
    if (!owner[i]) {
      if (IsSpace(query.text[i])) continue;
      return true;
    }
    auto [it, inserted] = token_of.emplace(id, *owner[i]);
    if (!inserted && it->second != *owner[i]) return true;
  }
  return false;
}

bool SameQueryStructure(const TaintedString& a, const TaintedString& b) {
  std::vector<Run> ra = Runs(a);
  std::vector<Run> rb = Runs(b);
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].tainted != rb[i].tainted) return false;
    if (ra[i].tainted ? Unescape(ra[i].text) != Unescape(rb[i].text) : ra[i].text != rb[i].text) {
      return false;
    }
  }
  return true;
}

EvalResult Evaluate(const Program& original, const Program& instrumented, const Schema& schema,
                    const std::vector<TestInput>& suite, const EvalOptions& options,
                    std::string program_id) {
  EvalResult result;
  result.program_id = std::move(program_id);
  result.outcomes.resize(suite.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.size(); i = next++) {
      result.outcomes[i] = EvaluateOne(original, instrumented, schema, suite[i], options.run);
    }
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(suite.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  EvalSummary& s = result.summary;
  s.inputs = suite.size();
  for (const InputOutcome& o : result.outcomes) {
    switch (o.classification) {
      case Classification::kAttackNeutralized: ++s.attack_neutralized; break;
      case Classification::kAttackUnchanged: ++s.attack_unchanged; break;
      case Classification::kLegitUnchanged: ++s.legit_unchanged; break;
      case Classification::kLegitModified: ++s.legit_modified; break;
    }
    if (o.input.label == InputLabel::kAttack) {
      if (!o.original_compromised) ++s.unsuccessful_attacks;
      if (o.instrumented_compromised) ++s.successful_attacks;
    } else if (o.structurally_modified) {
      ++s.legit_modified_structural;
    }
    if (!o.original_error.empty() || !o.instrumented_error.empty()) ++s.run_errors;
  }
  return result;
}

namespace {

QueryLog LogOf(const EvalResult& result, bool instrumented) {
  QueryLog log;
  for (const InputOutcome& o : result.outcomes) {
    for (const std::string& q : instrumented ? o.instrumented_queries : o.original_queries) {
      log.Append(QueryLogEntry{result.program_id, o.input.Id(), q});
    }
  }
  return log;
}

}  // namespace

QueryLog OriginalLog(const EvalResult& result) { return LogOf(result, false); }
QueryLog InstrumentedLog(const EvalResult& result) { return LogOf(result, true); }

}  // namespace assistkit
