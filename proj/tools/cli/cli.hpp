#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace critbound::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kChainFailure = 2,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `start:stop:lin|log[:count]`, endpoints inclusive, count defaults to 50.
struct Grid {
  double start = 0;
  double stop = 0;
  bool logarithmic = false;
  std::size_t count = 50;

  std::vector<double> values() const;
};

Grid parse_grid(const std::string& text);

/// Grid values rounded to integers, duplicates removed, order kept.
std::vector<std::int64_t> integer_values(const Grid& grid);

/// %.15g, with "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);

/// Runs one command line (args[0] is the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace critbound::cli
