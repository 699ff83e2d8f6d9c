#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "critbound/combinatorial_map.hpp"

namespace critbound {

/// Malformed line in the text exchange format. `line` and `column` are
/// 1-based; column points at the offending character.
class MapParseError : public std::runtime_error {
 public:
  MapParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Exchange format, one map per line:
//
//   E;sigma-cycles;alpha-pairs        e.g.  2;(0 2 1 3);(0 1)(2 3)
//
// Darts are 0..2E-1. Darts missing from the sigma cycles are fixed points of
// sigma; darts missing from the alpha pairs are fixed points of alpha, which
// the parser accepts and validate() then reports. A dart listed twice in the
// same permutation is a parse error.

CombinatorialMap parse_map(std::string_view text, std::size_t line_number = 1);

/// Parses every non-blank line that does not start with '#'.
std::vector<CombinatorialMap> read_maps(std::istream& in);

std::string format_map(const CombinatorialMap& map);

void write_maps(std::ostream& out, const std::vector<CombinatorialMap>& maps);

}  // namespace critbound
