#include "pathstat/path_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace pathstat {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Single-column CSV: a trailing comma or quoted cell is tolerated.
std::string_view first_cell(std::string_view line) {
  auto cell = trim(line.substr(0, line.find(',')));
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
    cell = trim(cell.substr(1, cell.size() - 2));
  }
  return cell;
}

bool parse_number(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Path read_path(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto cell = first_cell(line);
    if (cell.empty()) continue;
    double v = 0.0;
    const bool numeric = parse_number(cell, v);
    if (!seen_row) {
      seen_row = true;
      if (!numeric) continue;  // header row
    }
    if (!numeric) {
      throw ParseError(line_no, "not a number: '" + std::string(cell) + "'");
    }
    if (!std::isfinite(v)) {
      throw ParseError(line_no, "value is not finite: '" + std::string(cell) + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ParseError(line_no, "no values found");
  return Path(std::move(values));
}

Path read_path_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open path file '" + filename + "'");
  return read_path(in);
}

void write_path(std::ostream& out, const Path& path) {
  char buf[64];
  for (double v : path.values()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

void write_path_file(const std::string& filename, const Path& path) {
  std::ofstream out(filename);
  if (!out) throw std::runtime_error("cannot write path file '" + filename + "'");
  write_path(out, path);
}

}  // namespace pathstat
