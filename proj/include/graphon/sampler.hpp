#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "graphon/graphon.hpp"
#include "graphon/point.hpp"

// Random graphs from a kernel: node i gets a latent point x_i uniform on the
// kernel's domain, and each unordered pair {i, j} is joined independently
// with probability W(x_i, x_j).  Latents and edge coins come from per-node
// and per-pair counter streams, so results are reproducible from the seed
// alone and unchanged by sampling order.

namespace graphon {

struct SampledGraph {
  int n = 0;
  std::vector<Point> latents;               // n points, each of the kernel dimension
  std::vector<std::uint64_t> adjacency;     // n*n bits, row-major, symmetric, zero diagonal
  std::uint64_t seed = 0;

  bool has_edge(int i, int j) const;
  std::size_t edge_count() const;           // unordered pairs
};

// Throws InvalidSpec when n < 1.
SampledGraph sample_graph(const Graphon& w, int n, std::uint64_t seed);

// Plain-text edge list: a "# n=<n>" header line, then one "u v" line per
// edge with u < v, ascending by (u, v).  Returns bytes written; IoError on
// stream failure.
std::size_t write_edge_list(const SampledGraph& g, std::ostream& out);

}  // namespace graphon
