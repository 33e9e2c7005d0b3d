#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "disjoint/matrix.hpp"

namespace disjoint {

// Plain-text matrix format:
//   rows cols
//   a00 a01 ... a0(cols-1)
//   ...
// Entries are decimal integers separated by single spaces; every line ends in '\n'.

inline void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).get_str(10);
    }
    out << '\n';
  }
}

inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

/// Reads the plain-text format. Whitespace between tokens is not
/// checked strictly; the token count is.
inline IntMatrix read_matrix(std::istream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw std::invalid_argument("matrix header must be two non-negative integers \"rows cols\"");
  std::vector<Integer> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  std::string token;
  for (long long k = 0; k < rows * cols; ++k) {
    if (!(in >> token))
      throw std::invalid_argument("matrix ended after " + std::to_string(k) + " of " +
                                  std::to_string(rows * cols) + " entries");
    entries.push_back(parse_integer(token));
  }
  if (in >> token) throw std::invalid_argument("trailing data after matrix: '" + token + "'");
  return IntMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(entries));
}

inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline IntMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

}  // namespace disjoint
