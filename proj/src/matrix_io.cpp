#include "evdom/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "evdom/errors.hpp"

namespace evdom {
namespace {

struct Token {
  std::string_view text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Tokenizer {
 public:
  Tokenizer(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  bool next(Token& tok) {
    while (pos_ < text_.size() && is_space(text_[pos_])) advance();
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    tok.line = line_;
    tok.column = column_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) advance();
    tok.text = text_.substr(start, pos_ - start);
    return true;
  }

  [[noreturn]] void fail(const Token& tok, const std::string& msg) const {
    throw Error(ErrorCode::kParse, source_ + ":" + std::to_string(tok.line) + ":" +
                                       std::to_string(tok.column) + ": " + msg);
  }

  [[noreturn]] void fail_eof(const std::string& msg) const {
    throw Error(ErrorCode::kParse, source_ + ":" + std::to_string(line_) + ":" +
                                       std::to_string(column_) + ": " + msg);
  }

  const std::string& source() const { return source_; }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

double parse_double(Tokenizer& tz, const Token& tok) {
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    tz.fail(tok, "expected a decimal number, got '" + std::string(tok.text) + "'");
  }
  if (!std::isfinite(value)) tz.fail(tok, "non-finite number");
  return value;
}

Eigen::Index parse_dimension(Tokenizer& tz) {
  Token tok;
  if (!tz.next(tok)) tz.fail_eof("missing dimension line");
  long long n = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), n);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || n <= 0) {
    tz.fail(tok, "expected a positive integer dimension, got '" +
                     std::string(tok.text) + "'");
  }
  return static_cast<Eigen::Index>(n);
}

}  // namespace

Matrix parse_matrix(const std::string& text, const std::string& source) {
  Tokenizer tz(text, source);
  const Eigen::Index n = parse_dimension(tz);
  Matrix a(n, n);
  Token tok;
  std::size_t row_line = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!tz.next(tok)) tz.fail_eof("matrix ends early (row " + std::to_string(i) + ")");
      if (j == 0) {
        if (i > 0 && tok.line == row_line) {
          tz.fail(tok, "row " + std::to_string(i - 1) + " has more than " +
                           std::to_string(n) + " entries");
        }
        row_line = tok.line;
      } else if (tok.line != row_line) {
        tz.fail(tok, "row " + std::to_string(i) + " has " + std::to_string(j) +
                         " entries, expected " + std::to_string(n));
      }
      a(i, j) = parse_double(tz, tok);
    }
  }
  if (tz.next(tok)) tz.fail(tok, "trailing content after matrix");
  return a;
}

Vector parse_vector(const std::string& text, const std::string& source) {
  Tokenizer tz(text, source);
  const Eigen::Index n = parse_dimension(tz);
  Vector v(n);
  Token tok;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!tz.next(tok)) tz.fail_eof("vector ends early (entry " + std::to_string(i) + ")");
    v[i] = parse_double(tz, tok);
  }
  if (tz.next(tok)) tz.fail(tok, "trailing content after vector");
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix read_matrix_file(const std::string& path) {
  return parse_matrix(read_text_file(path), path);
}

Vector read_vector_file(const std::string& path) {
  return parse_vector(read_text_file(path), path);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
}

void write_vector(std::ostream& out, const Vector& v) {
  out << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
}

void write_matrix_file(const std::string& path, const Matrix& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  write_matrix(out, a);
}

void write_vector_file(const std::string& path, const Vector& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  write_vector(out, v);
}

}  // namespace evdom
