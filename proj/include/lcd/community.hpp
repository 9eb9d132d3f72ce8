#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "lcd/graph.hpp"

namespace lcd {

/// A processed ground-truth community with the per-community statistics
/// reported in dataset summaries.
struct Community {
  std::vector<NodeId> members;  // sorted ascending
  double avg_internal_degree = 0.0;  // mean over members of |N(v) ∩ C|
  double avg_internal_ratio = 0.0;   // mean over members of |N(v) ∩ C| / d(v)
  std::uint32_t diameter = 0;

  std::size_t size() const { return members.size(); }
};

struct CommunityTable {
  std::vector<Community> communities;
  std::size_t raw_communities = 0;
  std::size_t dropped_members = 0;     // raw ids absent from the graph
  std::size_t rejected_components = 0; // connected pieces below min_size
};

/// Dataset-level averages across a community table.
struct CommunitySummary {
  std::size_t count = 0;
  double mean_size = 0.0;
  double mean_internal_degree = 0.0;
  double mean_internal_ratio = 0.0;
  double mean_diameter = 0.0;
};

inline constexpr std::size_t kMinCommunitySize = 10;

/// Restricts each raw community to nodes present in `ids`, splits it into the
/// connected components of its induced subgraph and keeps components with at
/// least `min_size` members.
CommunityTable process_communities(const Graph& g, const IdMap& ids,
                                   std::span<const std::vector<RawId>> raw,
                                   std::size_t min_size = kMinCommunitySize);

CommunityTable process_communities(const Graph& g, const IdMap& ids,
                                   const std::filesystem::path& path,
                                   std::size_t min_size = kMinCommunitySize);

/// One community per line, whitespace-delimited raw ids; '#' lines skipped.
std::vector<std::vector<RawId>> parse_community_file(std::string_view text,
                                                     std::string_view source = "<memory>");
std::vector<std::vector<RawId>> read_community_file(const std::filesystem::path& path);

/// Exact diameter of the subgraph induced by `members`. Throws
/// std::invalid_argument if that subgraph is disconnected.
std::uint32_t community_diameter(const Graph& g, std::span<const NodeId> members);

/// Computes the statistics of an already-connected community.
Community describe_community(const Graph& g, std::vector<NodeId> members);

CommunitySummary summarize(const CommunityTable& table);

}  // namespace lcd
