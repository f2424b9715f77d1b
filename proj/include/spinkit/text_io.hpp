#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "spinkit/f2.hpp"
#include "spinkit/int_matrix.hpp"

namespace spinkit {

/// Malformed input, tagged with source name and 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Line-oriented tokenizer shared by every text format. '#' starts a comment
/// that runs to the end of the line; blank lines are skipped; tokens are
/// separated by arbitrary whitespace.
class TextReader {
 public:
  struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
  };

  TextReader(std::string_view text, std::string source = "<input>");

  bool at_end() const { return pos_ >= lines_.size(); }
  const Line& peek() const;
  Line next();
  /// Next n tokens, possibly spanning several lines.
  std::vector<std::string> take_tokens(std::size_t n, std::string_view what);

  [[noreturn]] void fail(std::size_t line, const std::string& what) const;
  std::size_t last_line() const { return last_line_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t token_pos_ = 0;
  std::size_t last_line_ = 0;
};

Int parse_integer(const TextReader& r, std::size_t line, const std::string& token);
mpq_class parse_rational(const TextReader& r, std::size_t line, const std::string& token);
std::size_t parse_count(const TextReader& r, std::size_t line, const std::string& token);
/// Parses "key=<count>" tokens such as "n=3".
std::size_t parse_keyed_count(const TextReader& r, std::size_t line, const std::string& token,
                              std::string_view key);

/// "rows cols" followed by rows*cols integers in row-major order.
IntMatrix read_int_matrix(TextReader& r);
/// Same layout; entries must be 0 or 1.
F2Matrix read_f2_matrix(TextReader& r);

IntMatrix parse_int_matrix(std::string_view text, std::string source = "<input>");

/// Canonical rendering: header line, then one row per line, single spaces.
std::string format_int_matrix(const IntMatrix& m);

}  // namespace spinkit
