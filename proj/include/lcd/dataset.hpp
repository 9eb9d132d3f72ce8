#pragma once

#include <filesystem>
#include <string>

#include "lcd/community.hpp"
#include "lcd/graph.hpp"

namespace lcd {

/// A preprocessed dataset: LCC graph, raw-id map and ground-truth table.
struct Dataset {
  std::string name;
  Graph graph;
  IdMap ids;
  CommunityTable communities;
};

/// Summary row in the layout of a dataset statistics table.
struct DatasetStats {
  std::string name;
  NodeId nodes = 0;
  std::uint64_t edges = 0;
  CommunitySummary summary;
  std::size_t raw_communities = 0;
  std::size_t dropped_members = 0;
  std::size_t rejected_components = 0;
};

/// Loads both files, keeps the largest connected component and processes
/// the communities against it.
Dataset preprocess(const std::filesystem::path& edge_file, const std::filesystem::path& community_file,
                   std::string name, std::size_t min_size = kMinCommunitySize);

/// Bundle layout: graph.bin (CSR), ids.txt (raw label per dense id),
/// communities.txt (dense ids, one community per line), stats.json.
void save_dataset(const Dataset& d, const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

void write_graph_binary(const Graph& g, const std::filesystem::path& file);
Graph read_graph_binary(const std::filesystem::path& file);

DatasetStats dataset_stats(const Dataset& d);
std::string stats_json(const DatasetStats& s);
std::string stats_csv(const DatasetStats& s, bool header);

}  // namespace lcd
