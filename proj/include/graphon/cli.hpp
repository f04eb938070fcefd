#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end.  run() is the whole program behind main(): it owns
// argument parsing, dispatch, and the exit-code contract
//   0  success
//   1  usage or configuration error (bad flags, bad spec, unreadable files)
//   2  numerical failure (degenerate fit, insufficient samples)
// so it can be driven from tests with string arrays and stringstreams.

namespace graphon::cli {

// "geometric:<min>:<max>:<count>" -> strictly decreasing grid of `count`
// points from max down to min, endpoints exact.  ParseError on anything
// else (unknown prefix, malformed numbers, min >= max, count < 2).
std::vector<double> parse_delta_grid(const std::string& descriptor);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphon::cli
