#include "assistkit/query_log.h"

namespace assistkit {

std::string EscapeLogField(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string UnescapeLogField(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out += field[i];
      continue;
    }
    if (i + 1 >= field.size()) throw QueryLogFormatError("dangling backslash in log field");
    switch (field[++i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default:
        throw QueryLogFormatError(std::string("unknown escape \\") + field[i] + " in log field");
    }
  }
  return out;
}

void QueryLog::Append(const std::string& program_id, const std::string& input_id,
                      const RunResult& run) {
  for (const ExecutedQuery& q : run.queries) {
    entries_.push_back(QueryLogEntry{program_id, input_id, q.query.text});
  }
}

std::string QueryLog::Serialize() const {
  std::string out;
  for (const QueryLogEntry& e : entries_) {
    out += EscapeLogField(e.program_id);
    out += '\t';
    out += EscapeLogField(e.input_id);
    out += '\t';
    out += EscapeLogField(e.query);
    out += '\n';
  }
  return out;
}

QueryLog QueryLog::Parse(std::string_view text) {
  QueryLog log;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
      throw QueryLogFormatError("line " + std::to_string(line_no) + ": expected three tab-separated fields");
    }
    log.entries_.push_back(QueryLogEntry{UnescapeLogField(line.substr(0, t1)),
                                         UnescapeLogField(line.substr(t1 + 1, t2 - t1 - 1)),
                                         UnescapeLogField(line.substr(t2 + 1))});
  }
  return log;
}

}  // namespace assistkit
