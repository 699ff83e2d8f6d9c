#include "critbound/map_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace critbound {

MapParseError::MapParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
    throw MapParseError(line_, pos + 1, what);
  }

  void skip_spaces() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }

  void expect(char c) {
    skip_spaces();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::int64_t number() {
    skip_spaces();
    std::int64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a non-negative integer");
    if (value < 0) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

// Parses "(a b c)(d e)..." up to the next ';' or end of line into `perm`,
// which starts as the identity.
void parse_cycles(Cursor& cur, Permutation& perm, bool pairs_only, const char* name) {
  const auto n = perm.size();
  std::vector<bool> used(n, false);
  cur.skip_spaces();
  while (!cur.at_end() && cur.peek() != ';') {
    cur.expect('(');
    std::vector<Dart> cycle;
    const auto open = cur.pos() - 1;
    cur.skip_spaces();
    while (cur.peek() != ')') {
      if (cur.at_end()) cur.fail(std::string("unterminated cycle in ") + name);
      const auto at = cur.pos();
      const auto d = cur.number();
      if (static_cast<std::size_t>(d) >= n) {
        cur.fail_at(at, std::string("dart ") + std::to_string(d) + " out of range in " + name +
                            " (map has " + std::to_string(n) + " darts)");
      }
      if (used[static_cast<std::size_t>(d)]) {
        cur.fail_at(at, std::string("dart ") + std::to_string(d) + " repeated in " + name +
                            " (not a permutation)");
      }
      used[static_cast<std::size_t>(d)] = true;
      cycle.push_back(static_cast<Dart>(d));
      cur.skip_spaces();
    }
    cur.expect(')');
    if (cycle.empty()) cur.fail_at(open, std::string("empty cycle in ") + name);
    if (pairs_only && cycle.size() != 2) {
      cur.fail_at(open, "alpha cycle must pair exactly two darts");
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      perm[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
    }
    cur.skip_spaces();
  }
}

}  // namespace

CombinatorialMap parse_map(std::string_view text, std::size_t line_number) {
  Cursor cur(text, line_number);
  const auto edges = cur.number();
  if (edges > (1 << 28)) cur.fail("edge count too large");
  const auto n = static_cast<std::size_t>(2 * edges);
  cur.expect(';');

  Permutation sigma(n);
  Permutation alpha(n);
  for (std::size_t d = 0; d < n; ++d) sigma[d] = alpha[d] = static_cast<Dart>(d);

  parse_cycles(cur, sigma, false, "sigma");
  cur.expect(';');
  parse_cycles(cur, alpha, true, "alpha");
  cur.skip_spaces();
  if (!cur.at_end()) cur.fail("trailing characters");
  return {std::move(sigma), std::move(alpha)};
}

std::vector<CombinatorialMap> read_maps(std::istream& in) {
  std::vector<CombinatorialMap> maps;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    maps.push_back(parse_map(line, number));
  }
  return maps;
}

std::string format_map(const CombinatorialMap& map) {
  std::ostringstream out;
  out << map.edge_count() << ';';
  for (const auto& cycle : vertex_cycles(map)) {
    out << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) out << (i ? " " : "") << cycle[i];
    out << ')';
  }
  out << ';';
  for (const auto& [a, b] : edge_darts(map)) out << '(' << a << ' ' << b << ')';
  return out.str();
}

void write_maps(std::ostream& out, const std::vector<CombinatorialMap>& maps) {
  for (const auto& m : maps) out << format_map(m) << '\n';
}

}  // namespace critbound
