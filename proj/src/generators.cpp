#include "lcd/generators.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include "lcd/errors.hpp"

namespace lcd {
namespace {

void add_clique(SyntheticDataset& d, NodeId first, std::size_t size) {
  for (NodeId i = 0; i < size; ++i) {
    for (NodeId j = i + 1; j < size; ++j) d.edges.emplace_back(first + i, first + j);
  }
}

std::vector<RawId> id_range(std::size_t first, std::size_t count) {
  std::vector<RawId> ids(count);
  for (std::size_t i = 0; i < count; ++i) ids[i] = first + i;
  return ids;
}

void check_cliques(std::size_t count, std::size_t size) {
  if (count < 1) throw std::invalid_argument("need at least one clique");
  if (size < 2) throw std::invalid_argument("clique size must be at least 2");
}

}  // namespace

void SyntheticDataset::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream edges_out(dir / "edges.txt");
  std::ofstream cmty_out(dir / "communities.txt");
  if (!edges_out || !cmty_out) throw DataError("cannot write synthetic dataset to " + dir.string());
  edges_out << "# nodes " << num_nodes << " edges " << edges.size() << "\n";
  for (auto [u, v] : edges) edges_out << u << '\t' << v << '\n';
  for (const auto& c : communities) {
    for (std::size_t i = 0; i < c.size(); ++i) cmty_out << (i ? "\t" : "") << c[i];
    cmty_out << '\n';
  }
}

SyntheticDataset ring_of_cliques(std::size_t count, std::size_t size) {
  check_cliques(count, size);
  if (count < 3) throw std::invalid_argument("ring of cliques needs at least 3 cliques");
  SyntheticDataset d;
  d.num_nodes = static_cast<NodeId>(count * size);
  for (std::size_t c = 0; c < count; ++c) {
    add_clique(d, static_cast<NodeId>(c * size), size);
    d.communities.push_back(id_range(c * size, size));
  }
  for (std::size_t c = 0; c < count; ++c) {
    const auto next = (c + 1) % count;
    d.edges.emplace_back(static_cast<NodeId>(c * size + size - 1), static_cast<NodeId>(next * size));
  }
  return d;
}

SyntheticDataset path_of_cliques(std::size_t count, std::size_t size, std::size_t per_community) {
  check_cliques(count, size);
  if (per_community < 1) throw std::invalid_argument("cliques per community must be at least 1");
  SyntheticDataset d;
  d.num_nodes = static_cast<NodeId>(count * size);
  for (std::size_t c = 0; c < count; ++c) add_clique(d, static_cast<NodeId>(c * size), size);
  for (std::size_t c = 0; c + 1 < count; ++c)
    d.edges.emplace_back(static_cast<NodeId>(c * size + size - 1), static_cast<NodeId>((c + 1) * size));
  for (std::size_t c = 0; c < count; c += per_community) {
    const auto cliques = std::min(per_community, count - c);
    d.communities.push_back(id_range(c * size, cliques * size));
  }
  return d;
}

SyntheticDataset two_cliques(std::size_t size) {
  check_cliques(2, size);
  SyntheticDataset d;
  d.num_nodes = static_cast<NodeId>(2 * size);
  add_clique(d, 0, size);
  add_clique(d, static_cast<NodeId>(size), size);
  d.edges.emplace_back(static_cast<NodeId>(size - 1), static_cast<NodeId>(size));
  d.communities.push_back(id_range(0, size));
  d.communities.push_back(id_range(size, size));
  return d;
}

SyntheticDataset planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                                   std::uint64_t seed) {
  if (blocks < 1 || block_size < 1) throw std::invalid_argument("planted partition needs nonempty blocks");
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw std::invalid_argument("edge probabilities must lie in [0, 1]");
  SyntheticDataset d;
  const auto n = blocks * block_size;
  d.num_nodes = static_cast<NodeId>(n);
  std::mt19937_64 rng(seed);
  // Portable uniform draw in [0, 1) from the top 53 bits.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = (u / block_size == v / block_size) ? p_in : p_out;
      if (uniform() < p) d.edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  for (std::size_t b = 0; b < blocks; ++b) d.communities.push_back(id_range(b * block_size, block_size));
  return d;
}

}  // namespace lcd
