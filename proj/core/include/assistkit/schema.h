#ifndef ASSISTKIT_SCHEMA_H_
#define ASSISTKIT_SCHEMA_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assistkit {

struct Domain {
  enum class Kind { kString, kNumeric };
  Kind kind = Kind::kString;
  // STRING(n); unset for plain STRING and for NUMERIC.
  std::optional<int> max_length;

  friend bool operator==(const Domain&, const Domain&) = default;
};

std::string ToString(const Domain& domain);

struct Attribute {
  std::string name;
  Domain domain;
};

struct Table {
  std::string name;
  std::vector<Attribute> attributes;

  // Case-insensitive lookup; nullptr when absent.
  const Attribute* Find(std::string_view attribute) const;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class Schema {
 public:
  explicit Schema(std::vector<Table> tables);

  const std::vector<Table>& tables() const { return tables_; }
  // Case-insensitive lookup; nullptr when absent.
  const Table* Find(std::string_view table) const;

 private:
  std::vector<Table> tables_;
};

/// Parses the schema file format:
///
///   # comment
///   TABLE BOOKS (author STRING, price NUMERIC);
///   TABLE USERS (login STRING(16), pin NUMERIC);
///
/// Throws SchemaError for an empty schema, duplicate names or unknown
/// domain keywords.
Schema LoadSchema(std::string_view source);

bool EqualsIgnoreCase(std::string_view a, std::string_view b);

}  // namespace assistkit

#endif  // ASSISTKIT_SCHEMA_H_
