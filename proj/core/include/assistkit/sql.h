// SQL subset parser and placeholder typing.
//
// Accepted statements:
//
//   SELECT (* | col {, col}) FROM table [WHERE cond]
//   INSERT INTO table (col {, col}) VALUES (value {, value})
//   UPDATE table SET col = value {, col = value} [WHERE cond]
//   DELETE FROM table [WHERE cond]
//
// each optionally followed by a single ';'. Conditions combine comparisons
// (=, <>, !=, <, <=, >, >=) with AND, OR, NOT and parentheses. Values are
// single-quoted strings with backslash escapes, numerals or NULL. Keywords
// and names are case-insensitive. There are no comments, subqueries or
// joins.
//
// In an abstract query a placeholder may only occupy a value position: inside
// a quoted string (string position) or as a bare value (numeric position),
// compared with or assigned to an attribute of the matching domain.

#ifndef ASSISTKIT_SQL_H_
#define ASSISTKIT_SQL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "assistkit/query_fragments.h"
#include "assistkit/schema.h"

namespace assistkit {

struct Binding {
  NodeId placeholder{};
  std::string table;
  std::string attribute;
  Domain domain;
};

struct ParseOutcome {
  AbstractQuery query;
  bool valid = false;
  // Valid: one binding per placeholder occurrence, in query order.
  std::vector<Binding> bindings;
  // Invalid: index of the first failing segment and the reason.
  std::size_t failing_segment = 0;
  std::string message;
};

ParseOutcome ParseAbstractQuery(const AbstractQuery& query, const Schema& schema);

enum class SqlTokenKind {
  kIdent,
  kKeyword,
  kString,
  kNumber,
  kNull,
  kPlaceholder,
  kStar,
  kComma,
  kLParen,
  kRParen,
  kSemicolon,
  kOperator,
  kEnd,
};

struct SqlToken {
  SqlTokenKind kind = SqlTokenKind::kEnd;
  std::string text;  // uppercased for keywords, decoded for strings
  // Byte span in the concrete query; for strings, the content span excludes
  // the quotes. Meaningless for abstract queries.
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t content_begin = 0;
  std::size_t content_end = 0;

  bool IsValue() const {
    return kind == SqlTokenKind::kString || kind == SqlTokenKind::kNumber ||
           kind == SqlTokenKind::kNull;
  }
};

struct ConcreteParse {
  bool valid = false;
  std::string message;
  std::vector<SqlToken> tokens;  // empty when lexing failed
};

/// Parses an executed query. Table and column names are checked against the
/// schema; value types are not.
ConcreteParse ParseConcreteQuery(std::string_view sql, const Schema& schema);

struct PlaceholderResolution {
  enum class Status { kKind, kConflict, kUnresolvable };

  NodeId placeholder{};
  Status status = Status::kUnresolvable;
  SanitizerKind kind = SanitizerKind::kString;  // kKind only
  std::vector<SanitizerKind> conflicting;       // kConflict only, >= 2 distinct
  std::string reason;                           // kUnresolvable only
};

std::string_view ToString(PlaceholderResolution::Status status);

SanitizerKind SanitizerFor(const Domain& domain);

/// One resolution per placeholder that occurs in any outcome's query,
/// ordered by node id.
std::vector<PlaceholderResolution> ResolvePlaceholders(const std::vector<ParseOutcome>& outcomes);

}  // namespace assistkit

#endif  // ASSISTKIT_SQL_H_
