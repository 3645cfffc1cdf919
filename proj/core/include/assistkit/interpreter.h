// QScript interpreter with a logging mock database.
//
// Every character of a runtime string carries a taint id: 0 for text that
// comes from the program, otherwise the id of the getParam evaluation it came
// from. Sanitizers keep the taint of the input characters they rewrite. The
// taint is what the evaluation harness uses to decide whether an input
// stayed inside a single SQL value token.

#ifndef ASSISTKIT_INTERPRETER_H_
#define ASSISTKIT_INTERPRETER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "assistkit/ast.h"

namespace assistkit {

// Request parameters. A parameter that is absent reads as "".
using InputVector = std::map<std::string, std::string>;

struct TaintedString {
  std::string text;
  std::vector<std::uint32_t> taint;  // same length as text

  static TaintedString Clean(std::string text);
  static TaintedString Tainted(std::string text, std::uint32_t id);
  void Append(const TaintedString& other);
  bool IsTainted() const;
};

struct ExecutedQuery {
  TaintedString query;
  SourceLocation loc;
};

struct RunResult {
  std::vector<ExecutedQuery> queries;
  // Parameter name for taint id i + 1.
  std::vector<std::string> taint_sources;
  std::size_t steps = 0;
};

inline constexpr std::size_t kDefaultStepBudget = 10000;

struct RunOptions {
  // Statements plus loop-condition evaluations.
  std::size_t step_budget = kDefaultStepBudget;
};

class RunError : public std::runtime_error {
 public:
  RunError(SourceLocation loc, const std::string& message);
  const SourceLocation& location() const { return loc_; }

 private:
  SourceLocation loc_;
};

/// Executes the program. Throws RunError on budget exhaustion or use of an
/// undeclared variable.
RunResult RunProgram(const Program& program, const InputVector& inputs,
                     const RunOptions& options = {});

}  // namespace assistkit

#endif  // ASSISTKIT_INTERPRETER_H_
