#include "assistkit/schema.h"

#include <cctype>
#include <utility>

namespace assistkit {

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::string ToString(const Domain& domain) {
  if (domain.kind == Domain::Kind::kNumeric) return "NUMERIC";
  if (domain.max_length) return "STRING(" + std::to_string(*domain.max_length) + ")";
  return "STRING";
}

const Attribute* Table::Find(std::string_view attribute) const {
  for (const Attribute& a : attributes) {
    if (EqualsIgnoreCase(a.name, attribute)) return &a;
  }
  return nullptr;
}

SchemaError::SchemaError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "schema line " + std::to_string(line) + ": " + message
                                  : "schema: " + message),
      line_(line) {}

Schema::Schema(std::vector<Table> tables) : tables_(std::move(tables)) {}

const Table* Schema::Find(std::string_view table) const {
  for (const Table& t : tables_) {
    if (EqualsIgnoreCase(t.name, table)) return &t;
  }
  return nullptr;
}

namespace {

struct Tok {
  enum Kind { kWord, kNumber, kPunct, kEnd } kind = kEnd;
  std::string text;
  int line = 0;
};

std::vector<Tok> Tokenize(std::string_view src) {
  std::vector<Tok> out;
  int line = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::kWord, std::string(src.substr(start, i - start)), line});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::kNumber, std::string(src.substr(start, i - start)), line});
    } else if (c == '(' || c == ')' || c == ',' || c == ';') {
      out.push_back({Tok::kPunct, std::string(1, c), line});
      ++i;
    } else {
      throw SchemaError(line, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", line});
  return out;
}

class SchemaParser {
 public:
  explicit SchemaParser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  std::vector<Table> Run() {
    std::vector<Table> tables;
    while (Peek().kind != Tok::kEnd) {
      Table t = ParseTable();
      for (const Table& other : tables) {
        if (EqualsIgnoreCase(other.name, t.name)) {
          throw SchemaError(last_line_, "duplicate table '" + t.name + "'");
        }
      }
      tables.push_back(std::move(t));
    }
    if (tables.empty()) throw SchemaError(0, "empty schema");
    return tables;
  }

 private:
  const Tok& Peek() const { return toks_[pos_]; }
  Tok Take() {
    Tok t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    last_line_ = t.line;
    return t;
  }

  void ExpectPunct(char c) {
    Tok t = Take();
    if (t.kind != Tok::kPunct || t.text[0] != c) {
      throw SchemaError(t.line, std::string("expected '") + c + "'" +
                                    (t.kind == Tok::kEnd ? " before end of input"
                                                         : " but found '" + t.text + "'"));
    }
  }

  std::string ExpectName(const char* what) {
    Tok t = Take();
    if (t.kind != Tok::kWord) throw SchemaError(t.line, std::string("expected ") + what);
    return t.text;
  }

  Table ParseTable() {
    Tok kw = Take();
    if (kw.kind != Tok::kWord || !EqualsIgnoreCase(kw.text, "TABLE")) {
      throw SchemaError(kw.line, "expected 'TABLE'");
    }
    Table table;
    table.name = ExpectName("table name");
    ExpectPunct('(');
    for (;;) {
      Attribute a;
      a.name = ExpectName("attribute name");
      a.domain = ParseDomain();
      if (table.Find(a.name) != nullptr) {
        throw SchemaError(last_line_, "duplicate attribute '" + a.name + "' in table '" +
                                          table.name + "'");
      }
      table.attributes.push_back(std::move(a));
      if (Peek().kind == Tok::kPunct && Peek().text == ",") {
        Take();
        continue;
      }
      break;
    }
    ExpectPunct(')');
    ExpectPunct(';');
    return table;
  }

  Domain ParseDomain() {
    Tok t = Take();
    if (t.kind != Tok::kWord) throw SchemaError(t.line, "expected a domain (STRING or NUMERIC)");
    Domain d;
    if (EqualsIgnoreCase(t.text, "NUMERIC")) {
      d.kind = Domain::Kind::kNumeric;
      return d;
    }
    if (!EqualsIgnoreCase(t.text, "STRING")) {
      throw SchemaError(t.line, "unknown domain '" + t.text + "'");
    }
    d.kind = Domain::Kind::kString;
    if (Peek().kind == Tok::kPunct && Peek().text == "(") {
      Take();
      Tok n = Take();
      if (n.kind != Tok::kNumber || n.text.size() > 9 || std::stoi(n.text) < 1) {
        throw SchemaError(n.line, "STRING length must be a positive integer");
      }
      d.max_length = std::stoi(n.text);
      ExpectPunct(')');
    }
    return d;
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

}  // namespace

Schema LoadSchema(std::string_view source) {
  SchemaParser parser(Tokenize(source));
  return Schema(parser.Run());
}

}  // namespace assistkit
