#ifndef ASSISTKIT_PARSER_H_
#define ASSISTKIT_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "assistkit/ast.h"

namespace assistkit {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SourceLocation loc, const std::string& message);

  const SourceLocation& location() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceLocation loc_;
  std::string detail_;
};

struct ParseOptions {
  // Name recorded in every SourceLocation.
  std::string file;
  // sanitize_string(...) / sanitize_numeric(...) are rejected unless set;
  // only instrumented output is expected to contain them.
  bool allow_sanitizers = false;
};

/// Parses QScript source. Throws SyntaxError on malformed input.
Program ParseProgram(std::string_view source, const ParseOptions& options = {});

}  // namespace assistkit

#endif  // ASSISTKIT_PARSER_H_
