#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pathstat/pathcore.hpp"

namespace pathstat {

/// Raised when a path file cannot be parsed; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads one value per line (plain text or single-column CSV). A non-numeric
/// first row is treated as a header. Blank lines are skipped.
Path read_path(std::istream& in);
Path read_path_file(const std::string& filename);

/// Writes one value per line with round-trip precision.
void write_path(std::ostream& out, const Path& path);
void write_path_file(const std::string& filename, const Path& path);

}  // namespace pathstat
