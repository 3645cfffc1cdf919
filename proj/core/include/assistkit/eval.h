// Differential evaluation of an original and an instrumented program.
//
// Each labelled input runs through both versions; the executed-query logs
// are compared byte for byte, which gives the primary classification. Two
// taint-based checks refine it:
//
//   confinement  every taint id of a logged query lies inside one SQL value
//                token (string contents, numeral or NULL) of a query that
//                parses; an attack that breaks this has succeeded.
//   structural   the untainted skeletons match and every tainted run matches
//                after undoing backslash escapes, so a legit "O'Brien" that
//                only gained an escape counts as unmodified.

#ifndef ASSISTKIT_EVAL_H_
#define ASSISTKIT_EVAL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "assistkit/interpreter.h"
#include "assistkit/query_log.h"
#include "assistkit/schema.h"
#include "assistkit/test_suite.h"

namespace assistkit {

enum class Classification { kAttackNeutralized, kAttackUnchanged, kLegitUnchanged, kLegitModified };

std::string_view ToString(Classification c);

struct InputOutcome {
  TestInput input;
  Classification classification = Classification::kLegitUnchanged;
  // LEGIT only: logs differ under the structural comparison.
  bool structurally_modified = false;
  // Injected text escaped its value token in the original / instrumented
  // log. Entries without taint are ignored.
  bool original_compromised = false;
  bool instrumented_compromised = false;
  std::string original_error;
  std::string instrumented_error;
  std::vector<std::string> original_queries;
  std::vector<std::string> instrumented_queries;
};

struct EvalSummary {
  std::size_t inputs = 0;
  std::size_t attack_neutralized = 0;
  std::size_t attack_unchanged = 0;
  std::size_t legit_unchanged = 0;
  std::size_t legit_modified = 0;
  std::size_t legit_modified_structural = 0;
  // ATTACK inputs whose original query already kept the injection confined.
  std::size_t unsuccessful_attacks = 0;
  // ATTACK inputs that still escape their token after instrumentation.
  std::size_t successful_attacks = 0;
  std::size_t run_errors = 0;

  std::size_t false_positives() const { return legit_modified; }
  std::size_t false_positives_structural() const { return legit_modified_structural; }
  std::size_t false_negatives() const { return successful_attacks; }
};

struct EvalResult {
  std::string program_id;
  std::vector<InputOutcome> outcomes;  // in suite order
  EvalSummary summary;
};

struct EvalOptions {
  RunOptions run;
  // Worker threads; results do not depend on this.
  unsigned jobs = 1;
};

EvalResult Evaluate(const Program& original, const Program& instrumented, const Schema& schema,
                    const std::vector<TestInput>& suite, const EvalOptions& options = {},
                    std::string program_id = {});

/// Whether any tainted text in the query escapes a single value token.
bool EscapesValueToken(const TaintedString& query, const Schema& schema);

/// Structural comparison of two executed queries, see above.
bool SameQueryStructure(const TaintedString& a, const TaintedString& b);

// Query logs of an evaluation, one entry per executed query.
QueryLog OriginalLog(const EvalResult& result);
QueryLog InstrumentedLog(const EvalResult& result);

}  // namespace assistkit

#endif  // ASSISTKIT_EVAL_H_
