#ifndef ASSISTKIT_EMITTER_H_
#define ASSISTKIT_EMITTER_H_

#include <string>

#include "assistkit/ast.h"

namespace assistkit {

/// Renders a program as QScript source, four-space indented, one statement
/// per line. ParseProgram(EmitSource(p)) is structurally equal to p for any
/// program the parser can produce.
std::string EmitSource(const Program& program);

std::string EmitExpr(const Expr& expr);

// Quotes and escapes text as a QScript string literal.
std::string QuoteLiteral(const std::string& text);

}  // namespace assistkit

#endif  // ASSISTKIT_EMITTER_H_
