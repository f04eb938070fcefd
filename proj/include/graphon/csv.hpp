#pragma once

#include <cstdio>
#include <string>

namespace graphon {

// Shortest-round-trip decimal rendering, stable across runs and platforms
// that share an IEEE double type.  CSV output must be byte-identical for
// identical (argv, seed), so all floats funnel through here.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace graphon
