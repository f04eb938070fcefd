#include "graphon/sampler.hpp"

#include <ostream>
#include <string>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

namespace {

std::size_t bit_index(int n, int i, int j) {
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
}

void set_bit(std::vector<std::uint64_t>& bits, std::size_t idx) {
  bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
}

bool get_bit(const std::vector<std::uint64_t>& bits, std::size_t idx) {
  return ((bits[idx >> 6] >> (idx & 63)) & 1u) != 0;
}

}  // namespace

bool SampledGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw IndexOutOfRange("vertex index out of range: (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") with n=" + std::to_string(n));
  }
  return get_bit(adjacency, bit_index(n, i, j));
}

std::size_t SampledGraph::edge_count() const {
  std::size_t total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (get_bit(adjacency, bit_index(n, i, j))) ++total;
    }
  }
  return total;
}

SampledGraph sample_graph(const Graphon& w, int n, std::uint64_t seed) {
  if (n < 1) throw InvalidSpec("need at least one vertex, got n=" + std::to_string(n));
  const int d = w.dim();

  SampledGraph g;
  g.n = n;
  g.seed = seed;
  g.latents.resize(static_cast<std::size_t>(n));
  const std::size_t n_bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  g.adjacency.assign((n_bits + 63) / 64, 0);

  const std::uint64_t latent_key = substream(seed, stream_tag::latents);
  for (int i = 0; i < n; ++i) {
    SplitMix64 rng(substream(latent_key, static_cast<std::uint64_t>(i)));
    Point& x = g.latents[static_cast<std::size_t>(i)];
    x.resize(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) x[static_cast<std::size_t>(c)] = rng.next_unit();
  }

  const std::uint64_t edge_key = substream(seed, stream_tag::edges);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t row_key = substream(edge_key, static_cast<std::uint64_t>(i));
    for (int j = i + 1; j < n; ++j) {
      SplitMix64 rng(substream(row_key, static_cast<std::uint64_t>(j)));
      const double p = w(g.latents[static_cast<std::size_t>(i)], g.latents[static_cast<std::size_t>(j)]);
      if (rng.next_unit() < p) {
        set_bit(g.adjacency, bit_index(n, i, j));
        set_bit(g.adjacency, bit_index(n, j, i));
      }
    }
  }
  return g;
}

std::size_t write_edge_list(const SampledGraph& g, std::ostream& out) {
  std::string text = "# n=" + std::to_string(g.n) + "\n";
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (get_bit(g.adjacency, bit_index(g.n, i, j))) {
        text += std::to_string(i);
        text += ' ';
        text += std::to_string(j);
        text += '\n';
      }
    }
  }
  out << text;
  if (!out) throw IoError("failed writing edge list");
  return text.size();
}

}  // namespace graphon
