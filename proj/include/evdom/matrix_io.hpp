#pragma once

#include <iosfwd>
#include <string>

#include "evdom/linalg.hpp"

namespace evdom {

// Text formats:
//   matrix: line 1 "n", then n lines of n whitespace-separated decimals
//   vector: line 1 "n", then n decimals (any whitespace layout)
// Numbers are parsed with std::from_chars, so the C locale never applies.
// Writers emit 17 significant digits, which round-trips every double.

Matrix parse_matrix(const std::string& text, const std::string& source = "<text>");
Vector parse_vector(const std::string& text, const std::string& source = "<text>");

Matrix read_matrix_file(const std::string& path);
Vector read_vector_file(const std::string& path);

void write_matrix(std::ostream& out, const Matrix& a);
void write_vector(std::ostream& out, const Vector& v);

void write_matrix_file(const std::string& path, const Matrix& a);
void write_vector_file(const std::string& path, const Vector& v);

/// "%.17g" rendering of a double.
std::string format_double(double x);

std::string read_text_file(const std::string& path);

}  // namespace evdom
