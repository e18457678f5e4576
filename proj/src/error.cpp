#include "dlrdb/error.hpp"

namespace dlrdb {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) {
    return message;
  }
  std::string where = "line " + std::to_string(line);
  if (column != 0) {
    where += ", column " + std::to_string(column);
  }
  return where + ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(located(message, line, column)), detail_(message), line_(line), column_(column) {}

}  // namespace dlrdb
