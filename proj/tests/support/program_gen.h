// Random QScript programs for property tests.

#ifndef ASSISTKIT_TESTS_PROGRAM_GEN_H_
#define ASSISTKIT_TESTS_PROGRAM_GEN_H_

#include <cstddef>
#include <random>
#include <string>

#include "assistkit/flow_graph.h"
#include "assistkit/interpreter.h"
#include "assistkit/schema.h"

namespace assistkit::testing {

struct GenOptions {
  int max_branches = 6;  // if statements
  int max_concats = 8;   // '+' and '+=' together
  int variables = 3;
  int params = 3;
  int max_depth = 3;
};

// Loop-free program over arbitrary literals. Every expression reads at most
// one variable and `+=` never reads a variable on its right-hand side, so no
// concatenation combines two independently branch-defined values.
std::string GenerateLoopFree(std::mt19937& rng, const GenOptions& options = {});

// Schema for GenerateSqlShaped: TABLE T (s STRING, t STRING, n NUMERIC, m NUMERIC).
Schema SqlShapedSchema();

// Loop-free program that builds SELECT/UPDATE/DELETE queries against
// SqlShapedSchema() from clause fragments chosen under random branches.
// Parameters p0..p5 are used in string positions, q0..q5 in numeric ones and
// c0..c3 only in conditions.
std::string GenerateSqlShaped(std::mt19937& rng);

// Inputs for a GenerateSqlShaped program: string parameters get text free of
// quotes and backslashes, numeric ones get numerals.
InputVector CleanInputs(std::mt19937& rng);

// Random inputs including quotes, backslashes and SQL fragments.
InputVector HostileInputs(std::mt19937& rng);

// Graph with `nodes` nodes and random edges, cycles included. Roughly a third
// of the nodes are literals or inputs; concatenations have two predecessors
// and assignments one to three. The last node is the only execution point.
FlowGraph RandomCyclicGraph(std::mt19937& rng, std::size_t nodes);

// Same shape without cycles: every predecessor has a smaller id.
FlowGraph RandomAcyclicGraph(std::mt19937& rng, std::size_t nodes);

std::string RandomString(std::mt19937& rng, std::size_t max_len, std::string_view alphabet);

}  // namespace assistkit::testing

#endif  // ASSISTKIT_TESTS_PROGRAM_GEN_H_
