#include "assistkit/sql.h"

#include <cctype>
#include <optional>
#include <utility>

namespace assistkit {

namespace {

struct Cell {
  bool is_placeholder = false;
  char c = '\0';
  NodeId node{};
  std::size_t segment = 0;
  std::size_t offset = 0;
};

std::vector<Cell> CellsOf(const AbstractQuery& q) {
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < q.segments().size(); ++s) {
    const Segment& seg = q.segments()[s];
    if (const auto* lit = std::get_if<LiteralSegment>(&seg)) {
      for (std::size_t i = 0; i < lit->text.size(); ++i) {
        cells.push_back(Cell{false, lit->text[i], {}, s, i});
      }
    } else {
      cells.push_back(Cell{true, '\0', std::get<PlaceholderSegment>(seg).node, s, 0});
    }
  }
  return cells;
}

std::vector<Cell> CellsOf(std::string_view sql) {
  std::vector<Cell> cells;
  cells.reserve(sql.size());
  for (std::size_t i = 0; i < sql.size(); ++i) cells.push_back(Cell{false, sql[i], {}, 0, i});
  return cells;
}

bool IsKeyword(std::string_view upper) {
  static constexpr std::string_view kKeywords[] = {
      "SELECT", "FROM", "WHERE", "AND",    "OR",  "NOT",    "INSERT",
      "INTO",   "VALUES", "UPDATE", "SET", "DELETE", "NULL"};
  for (std::string_view k : kKeywords) {
    if (k == upper) return true;
  }
  return false;
}

struct LexTok {
  SqlTokenKind kind = SqlTokenKind::kEnd;
  std::string text;
  std::size_t first = 0;  // cell range [first, last)
  std::size_t last = 0;
  std::size_t content_first = 0;
  std::size_t content_last = 0;
  std::size_t segment = 0;
  std::vector<NodeId> placeholders;
};

struct LexResult {
  std::vector<LexTok> tokens;
  std::optional<std::string> error;
  std::size_t error_segment = 0;
};

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool IsIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

LexResult Lex(const std::vector<Cell>& cells) {
  LexResult out;
  std::size_t i = 0;
  auto ch = [&](std::size_t k) -> char {
    return k < cells.size() && !cells[k].is_placeholder ? cells[k].c : '\0';
  };
  auto fail = [&](std::size_t at, std::string message) {
    out.error = std::move(message);
    out.error_segment = at < cells.size() ? cells[at].segment
                        : cells.empty()   ? 0
                                          : cells.back().segment;
  };
  while (i < cells.size()) {
    const Cell& cell = cells[i];
    LexTok t;
    t.first = i;
    t.segment = cell.segment;
    if (cell.is_placeholder) {
      t.kind = SqlTokenKind::kPlaceholder;
      t.placeholders.push_back(cell.node);
      t.last = ++i;
      out.tokens.push_back(std::move(t));
      continue;
    }
    char c = cell.c;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\'') {
      t.kind = SqlTokenKind::kString;
      t.content_first = ++i;
      bool closed = false;
      while (i < cells.size()) {
        if (cells[i].is_placeholder) {
          t.placeholders.push_back(cells[i].node);
          ++i;
          continue;
        }
        char d = cells[i].c;
        if (d == '\\') {
          if (i + 1 >= cells.size()) break;
          if (cells[i + 1].is_placeholder) {
            ++i;
            continue;
          }
          t.text += cells[i + 1].c;
          i += 2;
          continue;
        }
        if (d == '\'') {
          closed = true;
          break;
        }
        t.text += d;
        ++i;
      }
      if (!closed) {
        fail(t.first, "unterminated string literal");
        return out;
      }
      t.content_last = i;
      t.last = ++i;
      out.tokens.push_back(std::move(t));
      continue;
    }
    if (IsDigit(c) || (c == '-' && IsDigit(ch(i + 1)))) {
      t.kind = SqlTokenKind::kNumber;
      t.text += c;
      ++i;
      while (IsDigit(ch(i))) t.text += cells[i++].c;
      if (ch(i) == '.' && IsDigit(ch(i + 1))) {
        t.text += cells[i++].c;
        while (IsDigit(ch(i))) t.text += cells[i++].c;
      }
      t.last = i;
      if (IsIdentChar(ch(i))) {
        fail(i, "malformed number");
        return out;
      }
      out.tokens.push_back(std::move(t));
      continue;
    }
    if (IsIdentStart(c)) {
      while (IsIdentChar(ch(i))) t.text += cells[i++].c;
      t.last = i;
      std::string upper;
      for (char x : t.text) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(x)));
      if (upper == "NULL") {
        t.kind = SqlTokenKind::kNull;
        t.text = upper;
      } else if (IsKeyword(upper)) {
        t.kind = SqlTokenKind::kKeyword;
        t.text = upper;
      } else {
        t.kind = SqlTokenKind::kIdent;
      }
      out.tokens.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '*': t.kind = SqlTokenKind::kStar; break;
      case ',': t.kind = SqlTokenKind::kComma; break;
      case '(': t.kind = SqlTokenKind::kLParen; break;
      case ')': t.kind = SqlTokenKind::kRParen; break;
      case ';': t.kind = SqlTokenKind::kSemicolon; break;
      case '=':
        t.kind = SqlTokenKind::kOperator;
        break;
      case '<':
        t.kind = SqlTokenKind::kOperator;
        if (ch(i + 1) == '=' || ch(i + 1) == '>') {
          t.text = std::string{c, ch(i + 1)};
          ++i;
        }
        break;
      case '>':
        t.kind = SqlTokenKind::kOperator;
        if (ch(i + 1) == '=') {
          t.text = ">=";
          ++i;
        }
        break;
      case '!':
        if (ch(i + 1) == '=') {
          t.kind = SqlTokenKind::kOperator;
          t.text = "!=";
          ++i;
          break;
        }
        [[fallthrough]];
      default:
        fail(i, std::string("unexpected character '") + c + "'");
        return out;
    }
    if (t.text.empty()) t.text = std::string(1, c);
    t.last = ++i;
    out.tokens.push_back(std::move(t));
  }
  LexTok end;
  end.kind = SqlTokenKind::kEnd;
  end.first = end.last = cells.size();
  end.segment = cells.empty() ? 0 : cells.back().segment;
  out.tokens.push_back(std::move(end));
  return out;
}

struct SqlFailure {
  std::size_t segment;
  std::string message;
};

class SqlParser {
 public:
  SqlParser(const std::vector<LexTok>& toks, const Schema& schema)
      : toks_(toks), schema_(schema) {}

  std::vector<Binding> Run() {
    const LexTok& first = Peek();
    if (IsKeyword(first, "SELECT")) {
      ParseSelect();
    } else if (IsKeyword(first, "INSERT")) {
      ParseInsert();
    } else if (IsKeyword(first, "UPDATE")) {
      ParseUpdate();
    } else if (IsKeyword(first, "DELETE")) {
      ParseDelete();
    } else {
      Fail(first, "expected SELECT, INSERT, UPDATE or DELETE");
    }
    if (Peek().kind == SqlTokenKind::kSemicolon) Take();
    if (Peek().kind != SqlTokenKind::kEnd) Fail(Peek(), "unexpected trailing input");
    return std::move(bindings_);
  }

 private:
  struct Operand {
    const Attribute* attribute = nullptr;
    const LexTok* value = nullptr;
  };

  static bool IsKeyword(const LexTok& t, std::string_view kw) {
    return t.kind == SqlTokenKind::kKeyword && t.text == kw;
  }

  const LexTok& Peek() const { return toks_[pos_]; }
  const LexTok& Take() {
    const LexTok& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void Fail(const LexTok& at, const std::string& expected) const {
    if (at.kind == SqlTokenKind::kPlaceholder) {
      throw SqlFailure{at.segment, "placeholder in structural position"};
    }
    if (at.kind == SqlTokenKind::kEnd) {
      throw SqlFailure{at.segment, expected + " (query ends early)"};
    }
    throw SqlFailure{at.segment, expected};
  }

  void ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(Peek(), kw)) Fail(Peek(), "expected " + std::string(kw));
    Take();
  }

  void Expect(SqlTokenKind kind, const char* what) {
    if (Peek().kind != kind) Fail(Peek(), std::string("expected ") + what);
    Take();
  }

  const Table& ParseTable() {
    const LexTok& t = Peek();
    if (t.kind != SqlTokenKind::kIdent) Fail(t, "expected a table name");
    Take();
    const Table* table = schema_.Find(t.text);
    if (table == nullptr) throw SqlFailure{t.segment, "unknown table '" + t.text + "'"};
    return *table;
  }

  const Attribute& ParseColumn(const Table& table) {
    const LexTok& t = Peek();
    if (t.kind != SqlTokenKind::kIdent) Fail(t, "expected a column name");
    Take();
    const Attribute* a = table.Find(t.text);
    if (a == nullptr) {
      throw SqlFailure{t.segment, "unknown column '" + t.text + "' in table '" + table.name + "'"};
    }
    return *a;
  }

  const LexTok& ParseValue() {
    const LexTok& t = Peek();
    if (t.kind == SqlTokenKind::kString || t.kind == SqlTokenKind::kNumber ||
        t.kind == SqlTokenKind::kNull || t.kind == SqlTokenKind::kPlaceholder) {
      return Take();
    }
    Fail(t, "expected a value");
  }

  void Bind(const Table& table, const Attribute& attribute, const LexTok& value) {
    if (value.placeholders.empty()) return;
    bool numeric = attribute.domain.kind == Domain::Kind::kNumeric;
    if (value.kind == SqlTokenKind::kString && numeric) {
      throw SqlFailure{value.segment, "quoted value for numeric attribute '" + attribute.name + "'"};
    }
    if (value.kind == SqlTokenKind::kPlaceholder && !numeric) {
      throw SqlFailure{value.segment, "unquoted value for string attribute '" + attribute.name + "'"};
    }
    for (NodeId p : value.placeholders) {
      bindings_.push_back(Binding{p, table.name, attribute.name, attribute.domain});
    }
  }

  void ParseSelect() {
    Take();
    std::vector<const LexTok*> columns;
    if (Peek().kind == SqlTokenKind::kStar) {
      Take();
    } else {
      for (;;) {
        if (Peek().kind != SqlTokenKind::kIdent) Fail(Peek(), "expected a column name or *");
        columns.push_back(&Take());
        if (Peek().kind != SqlTokenKind::kComma) break;
        Take();
      }
    }
    ExpectKeyword("FROM");
    const Table& table = ParseTable();
    for (const LexTok* c : columns) {
      if (table.Find(c->text) == nullptr) {
        throw SqlFailure{c->segment, "unknown column '" + c->text + "' in table '" + table.name + "'"};
      }
    }
    ParseOptionalWhere(table);
  }

  void ParseInsert() {
    Take();
    ExpectKeyword("INTO");
    const Table& table = ParseTable();
    Expect(SqlTokenKind::kLParen, "'('");
    std::vector<const Attribute*> columns;
    for (;;) {
      columns.push_back(&ParseColumn(table));
      if (Peek().kind != SqlTokenKind::kComma) break;
      Take();
    }
    Expect(SqlTokenKind::kRParen, "')'");
    ExpectKeyword("VALUES");
    Expect(SqlTokenKind::kLParen, "'('");
    std::size_t n = 0;
    for (;;) {
      const LexTok& v = ParseValue();
      if (n >= columns.size()) throw SqlFailure{v.segment, "more values than columns"};
      Bind(table, *columns[n], v);
      ++n;
      if (Peek().kind != SqlTokenKind::kComma) break;
      Take();
    }
    if (n != columns.size()) Fail(Peek(), "fewer values than columns");
    Expect(SqlTokenKind::kRParen, "')'");
  }

  void ParseUpdate() {
    Take();
    const Table& table = ParseTable();
    ExpectKeyword("SET");
    for (;;) {
      const Attribute& a = ParseColumn(table);
      if (Peek().kind != SqlTokenKind::kOperator || Peek().text != "=") Fail(Peek(), "expected '='");
      Take();
      Bind(table, a, ParseValue());
      if (Peek().kind != SqlTokenKind::kComma) break;
      Take();
    }
    ParseOptionalWhere(table);
  }

  void ParseDelete() {
    Take();
    ExpectKeyword("FROM");
    const Table& table = ParseTable();
    ParseOptionalWhere(table);
  }

  void ParseOptionalWhere(const Table& table) {
    if (!IsKeyword(Peek(), "WHERE")) return;
    Take();
    ParseDisjunction(table);
  }

  void ParseDisjunction(const Table& table) {
    ParseConjunction(table);
    while (IsKeyword(Peek(), "OR")) {
      Take();
      ParseConjunction(table);
    }
  }

  void ParseConjunction(const Table& table) {
    ParseUnary(table);
    while (IsKeyword(Peek(), "AND")) {
      Take();
      ParseUnary(table);
    }
  }

  void ParseUnary(const Table& table) {
    if (IsKeyword(Peek(), "NOT")) {
      Take();
      ParseUnary(table);
      return;
    }
    if (Peek().kind == SqlTokenKind::kLParen) {
      Take();
      ParseDisjunction(table);
      Expect(SqlTokenKind::kRParen, "')'");
      return;
    }
    ParseComparison(table);
  }

  Operand ParseOperand(const Table& table) {
    Operand o;
    if (Peek().kind == SqlTokenKind::kIdent) {
      o.attribute = &ParseColumn(table);
    } else {
      o.value = &ParseValue();
    }
    return o;
  }

  void ParseComparison(const Table& table) {
    if (Peek().kind == SqlTokenKind::kEnd) Fail(Peek(), "expected a comparison");
    Operand left = ParseOperand(table);
    if (Peek().kind != SqlTokenKind::kOperator) Fail(Peek(), "expected a comparison operator");
    Take();
    Operand right = ParseOperand(table);
    if (left.attribute && right.value) {
      Bind(table, *left.attribute, *right.value);
    } else if (right.attribute && left.value) {
      Bind(table, *right.attribute, *left.value);
    } else {
      for (const Operand* o : {&left, &right}) {
        if (o->value && !o->value->placeholders.empty()) {
          throw SqlFailure{o->value->segment, "placeholder is not compared with an attribute"};
        }
      }
    }
  }

  const std::vector<LexTok>& toks_;
  const Schema& schema_;
  std::size_t pos_ = 0;
  std::vector<Binding> bindings_;
};

}  // namespace

ParseOutcome ParseAbstractQuery(const AbstractQuery& query, const Schema& schema) {
  ParseOutcome outcome;
  outcome.query = query;
  LexResult lexed = Lex(CellsOf(query));
  if (lexed.error) {
    outcome.failing_segment = lexed.error_segment;
    outcome.message = *lexed.error;
    return outcome;
  }
  try {
    SqlParser parser(lexed.tokens, schema);
    outcome.bindings = parser.Run();
    outcome.valid = true;
  } catch (const SqlFailure& f) {
    outcome.failing_segment = f.segment;
    outcome.message = f.message;
    outcome.bindings.clear();
  }
  return outcome;
}

ConcreteParse ParseConcreteQuery(std::string_view sql, const Schema& schema) {
  ConcreteParse out;
  std::vector<Cell> cells = CellsOf(sql);
  LexResult lexed = Lex(cells);
  if (lexed.error) {
    out.message = *lexed.error;
    return out;
  }
  auto offset = [&](std::size_t cell) { return cell < cells.size() ? cells[cell].offset : sql.size(); };
  for (const LexTok& t : lexed.tokens) {
    SqlToken tok;
    tok.kind = t.kind;
    tok.text = t.text;
    tok.begin = offset(t.first);
    tok.end = t.last == t.first ? tok.begin : offset(t.last - 1) + 1;
    if (t.kind == SqlTokenKind::kString) {
      tok.content_begin = offset(t.content_first);
      tok.content_end = offset(t.content_last);
    } else {
      tok.content_begin = tok.begin;
      tok.content_end = tok.end;
    }
    out.tokens.push_back(std::move(tok));
  }
  try {
    SqlParser parser(lexed.tokens, schema);
    parser.Run();
    out.valid = true;
  } catch (const SqlFailure& f) {
    out.message = f.message;
  }
  return out;
}

}  // namespace assistkit
