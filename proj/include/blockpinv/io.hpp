#pragma once

// Plain-text matrix format:
//
//   # optional comment lines
//   rows cols
//   re im          <- rows*cols lines, row-major
//
// Values are written with 17 significant digits so that a write/read cycle
// reproduces every double exactly.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "blockpinv/matrix.hpp"

namespace blockpinv {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return {buf, end};
}

inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line_no, const char* what) {
  // from_chars rejects a leading '+', which is a legal decimal literal.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw parse_error(line_no, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

inline void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (const auto& z : m.entries()) {
    os << detail::format_double(z.real()) << ' ' << detail::format_double(z.imag()) << '\n';
  }
}

inline ComplexMatrix read_matrix(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t rows = 0, cols = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto toks = detail::tokens(line);
    if (toks.empty()) continue;
    if (toks.front().front() == '#') continue;
    if (toks.size() != 2) throw parse_error(line_no, "expected 'rows cols'");
    rows = detail::parse_number<std::size_t>(toks[0], line_no, "row count");
    cols = detail::parse_number<std::size_t>(toks[1], line_no, "column count");
    if (rows == 0 || cols == 0) throw parse_error(line_no, "dimensions must be positive");
    have_header = true;
    break;
  }
  if (!have_header) throw parse_error(line_no, "missing 'rows cols' header");

  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  while (entries.size() < rows * cols) {
    if (!std::getline(is, line)) {
      throw parse_error(line_no, "expected " + std::to_string(rows * cols) + " entries, found " +
                                     std::to_string(entries.size()));
    }
    ++line_no;
    const auto toks = detail::tokens(line);
    if (toks.size() != 2) throw parse_error(line_no, "expected 're im'");
    const double re = detail::parse_number<double>(toks[0], line_no, "real part");
    const double im = detail::parse_number<double>(toks[1], line_no, "imaginary part");
    if (!std::isfinite(re) || !std::isfinite(im)) throw parse_error(line_no, "non-finite entry");
    entries.emplace_back(re, im);
  }
  while (std::getline(is, line)) {
    ++line_no;
    if (!detail::tokens(line).empty()) throw parse_error(line_no, "trailing content after matrix");
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

inline ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(0, "cannot open '" + path + "'");
  return read_matrix(in);
}

inline void save_matrix(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_matrix(out, m);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace blockpinv
