// Brute-force reference: walks every control-flow path of a loop-free
// program, carrying placeholders symbolically.

#ifndef ASSISTKIT_TESTS_PATH_ORACLE_H_
#define ASSISTKIT_TESTS_PATH_ORACLE_H_

#include <map>
#include <set>
#include <string>

#include "assistkit/ast.h"
#include "assistkit/flow_graph.h"
#include "assistkit/query_fragments.h"

namespace assistkit::testing {

struct PathOracleResult {
  // executeQuery statement location -> abstract queries over all paths.
  std::map<SourceLocation, std::set<AbstractQuery>> queries;
  // Variable use location -> locations of the definitions reaching it.
  // Uses are VarRef expressions and `+=` statements.
  std::map<SourceLocation, std::set<SourceLocation>> reaching_defs;
  std::size_t paths = 0;
};

// Placeholders are named by the graph's InitAnyString node at the same
// location as the getParam expression. Throws std::logic_error on loops.
PathOracleResult EnumeratePaths(const Program& program, const FlowGraph& graph);

}  // namespace assistkit::testing

#endif  // ASSISTKIT_TESTS_PATH_ORACLE_H_
