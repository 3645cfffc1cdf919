#ifndef ASSISTKIT_QUERY_LOG_H_
#define ASSISTKIT_QUERY_LOG_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "assistkit/interpreter.h"

namespace assistkit {

struct QueryLogEntry {
  std::string program_id;
  std::string input_id;
  std::string query;

  friend bool operator==(const QueryLogEntry&, const QueryLogEntry&) = default;
};

// Append-only record of executed queries.
class QueryLog {
 public:
  void Append(QueryLogEntry entry) { entries_.push_back(std::move(entry)); }
  void Append(const std::string& program_id, const std::string& input_id, const RunResult& run);

  const std::vector<QueryLogEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // One line per entry: program-id TAB input-id TAB query. Backslash, tab,
  // newline and carriage return are escaped as \\ \t \n \r in every field.
  std::string Serialize() const;
  static QueryLog Parse(std::string_view text);

  friend bool operator==(const QueryLog&, const QueryLog&) = default;

 private:
  std::vector<QueryLogEntry> entries_;
};

class QueryLogFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string EscapeLogField(std::string_view field);
std::string UnescapeLogField(std::string_view field);

}  // namespace assistkit

#endif  // ASSISTKIT_QUERY_LOG_H_
