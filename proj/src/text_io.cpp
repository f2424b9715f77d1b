#include "spinkit/text_io.hpp"

#include <sstream>

namespace spinkit {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

TextReader::TextReader(std::string_view text, std::string source) : source_(std::move(source)) {
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    std::string tok;
    while (is >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines_.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
}

const TextReader::Line& TextReader::peek() const {
  if (at_end()) fail(last_line_, "unexpected end of input");
  return lines_[pos_];
}

TextReader::Line TextReader::next() {
  if (at_end()) fail(last_line_, "unexpected end of input");
  if (token_pos_ != 0) fail(lines_[pos_].number, "unexpected extra tokens");
  last_line_ = lines_[pos_].number;
  return lines_[pos_++];
}

std::vector<std::string> TextReader::take_tokens(std::size_t n, std::string_view what) {
  std::vector<std::string> out;
  while (out.size() < n) {
    if (at_end())
      fail(last_line_, "unexpected end of input while reading " + std::string(what));
    const Line& line = lines_[pos_];
    last_line_ = line.number;
    while (token_pos_ < line.tokens.size() && out.size() < n) out.push_back(line.tokens[token_pos_++]);
    if (token_pos_ == line.tokens.size()) {
      ++pos_;
      token_pos_ = 0;
    }
  }
  return out;
}

void TextReader::fail(std::size_t line, const std::string& what) const {
  throw ParseError(source_, line, what);
}

Int parse_integer(const TextReader& r, std::size_t line, const std::string& token) {
  std::string_view t = token;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  Int v;
  if (t.empty() || v.set_str(std::string(t), 10) != 0) r.fail(line, "expected an integer, got '" + token + "'");
  return v;
}

mpq_class parse_rational(const TextReader& r, std::size_t line, const std::string& token) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) return mpq_class(parse_integer(r, line, token));
  Int num = parse_integer(r, line, token.substr(0, slash));
  Int den = parse_integer(r, line, token.substr(slash + 1));
  if (den == 0) r.fail(line, "zero denominator in '" + token + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::size_t parse_count(const TextReader& r, std::size_t line, const std::string& token) {
  Int v = parse_integer(r, line, token);
  if (v < 0 || !v.fits_ulong_p()) r.fail(line, "expected a non-negative count, got '" + token + "'");
  return v.get_ui();
}

std::size_t parse_keyed_count(const TextReader& r, std::size_t line, const std::string& token,
                              std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0) r.fail(line, "expected '" + prefix + "<count>', got '" + token + "'");
  return parse_count(r, line, token.substr(prefix.size()));
}

IntMatrix read_int_matrix(TextReader& r) {
  auto header = r.take_tokens(2, "matrix dimensions");
  const std::size_t line = r.last_line();
  const std::size_t rows = parse_count(r, line, header[0]);
  const std::size_t cols = parse_count(r, line, header[1]);
  auto toks = r.take_tokens(rows * cols, "matrix entries");
  std::vector<Int> entries;
  entries.reserve(toks.size());
  for (const auto& t : toks) entries.push_back(parse_integer(r, r.last_line(), t));
  return IntMatrix(rows, cols, std::move(entries));
}

F2Matrix read_f2_matrix(TextReader& r) {
  IntMatrix m = read_int_matrix(r);
  for (const Int& x : m.entries())
    if (x != 0 && x != 1) r.fail(r.last_line(), "F2 matrix entries must be 0 or 1, got " + x.get_str());
  return F2Matrix::reduce(m);
}

IntMatrix parse_int_matrix(std::string_view text, std::string source) {
  TextReader r(text, std::move(source));
  IntMatrix m = read_int_matrix(r);
  if (!r.at_end()) r.fail(r.peek().number, "trailing content after matrix");
  return m;
}

std::string format_int_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace spinkit
