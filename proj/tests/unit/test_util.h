#ifndef ASSISTKIT_TESTS_TEST_UTIL_H_
#define ASSISTKIT_TESTS_TEST_UTIL_H_

#include <fstream>
#include <sstream>
#include <string>

#include "assistkit/parser.h"
#include "assistkit/schema.h"

namespace assistkit::testing {

inline std::string CorpusPath(const std::string& name) { return std::string(ASSISTKIT_CORPUS_DIR) + "/" + name; }

inline std::string ReadCorpus(const std::string& name) {
  std::ifstream in(CorpusPath(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program Parse(std::string_view src, bool allow_sanitizers = true) {
  ParseOptions o;
  o.file = "t.qs";
  o.allow_sanitizers = allow_sanitizers;
  return ParseProgram(src, o);
}

inline Program ParseCorpus(const std::string& name) {
  ParseOptions o;
  o.file = name;
  return ParseProgram(ReadCorpus(name), o);
}

inline Schema BooksSchema() { return LoadSchema("TABLE BOOKS (author STRING, price NUMERIC);"); }

struct CorpusProgram {
  const char* program;
  const char* schema;
  const char* suite;
};

inline constexpr CorpusProgram kCorpus[] = {
    {"bookstore_mini.qs", "bookstore.schema", "bookstore_mini.suite"},
    {"login.qs", "apps.schema", "login.suite"},
    {"classifieds.qs", "apps.schema", "classifieds.suite"},
    {"events.qs", "apps.schema", "events.suite"},
    {"portal.qs", "apps.schema", "portal.suite"},
    {"payroll.qs", "apps.schema", "payroll.suite"},
};

}  // namespace assistkit::testing

#endif  // ASSISTKIT_TESTS_TEST_UTIL_H_
