#include "lcd/community.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "lcd/errors.hpp"

namespace lcd {
namespace {

// Local index of each member, for lookups restricted to the community.
std::unordered_map<NodeId, std::uint32_t> index_members(std::span<const NodeId> members) {
  std::unordered_map<NodeId, std::uint32_t> index;
  index.reserve(members.size() * 2);
  for (std::uint32_t i = 0; i < members.size(); ++i) index.emplace(members[i], i);
  return index;
}

// Eccentricity of `source` inside the community; UINT32_MAX if some member
// is unreachable.
std::uint32_t eccentricity(const Graph& g, std::span<const NodeId> members,
                           const std::unordered_map<NodeId, std::uint32_t>& index,
                           std::uint32_t source, std::vector<std::uint32_t>& dist) {
  constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
  std::fill(dist.begin(), dist.end(), kInf);
  std::queue<std::uint32_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  std::size_t reached = 1;
  std::uint32_t far = 0;
  while (!frontier.empty()) {
    auto i = frontier.front();
    frontier.pop();
    for (NodeId u : g.neighbors(members[i])) {
      auto it = index.find(u);
      if (it == index.end() || dist[it->second] != kInf) continue;
      dist[it->second] = dist[i] + 1;
      far = std::max(far, dist[it->second]);
      ++reached;
      frontier.push(it->second);
    }
  }
  return reached == members.size() ? far : kInf;
}

}  // namespace

std::uint32_t community_diameter(const Graph& g, std::span<const NodeId> members) {
  if (members.empty()) throw std::invalid_argument("community_diameter: empty community");
  auto index = index_members(members);
  std::vector<std::uint32_t> dist(members.size());
  std::uint32_t diameter = 0;
  for (std::uint32_t i = 0; i < members.size(); ++i) {
    auto ecc = eccentricity(g, members, index, i, dist);
    if (ecc == std::numeric_limits<std::uint32_t>::max())
      throw std::invalid_argument("community_diameter: induced subgraph is disconnected");
    diameter = std::max(diameter, ecc);
  }
  return diameter;
}

Community describe_community(const Graph& g, std::vector<NodeId> members) {
  std::sort(members.begin(), members.end());
  Community c;
  auto index = index_members(members);
  double degree_sum = 0.0;
  double ratio_sum = 0.0;
  for (NodeId v : members) {
    std::size_t inside = 0;
    for (NodeId u : g.neighbors(v)) inside += index.count(u);
    degree_sum += static_cast<double>(inside);
    if (g.degree(v) > 0) ratio_sum += static_cast<double>(inside) / g.degree(v);
  }
  const auto size = static_cast<double>(members.size());
  c.avg_internal_degree = degree_sum / size;
  c.avg_internal_ratio = ratio_sum / size;
  c.diameter = community_diameter(g, members);
  c.members = std::move(members);
  return c;
}

CommunityTable process_communities(const Graph& g, const IdMap& ids,
                                   std::span<const std::vector<RawId>> raw,
                                   std::size_t min_size) {
  CommunityTable table;
  table.raw_communities = raw.size();
  std::vector<std::uint32_t> component;
  for (const auto& line : raw) {
    std::vector<NodeId> members;
    members.reserve(line.size());
    for (RawId label : line) {
      if (auto v = ids.find(label)) {
        members.push_back(*v);
      } else {
        ++table.dropped_members;
      }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) continue;

    // Split into connected pieces of the induced subgraph.
    auto index = index_members(members);
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    component.assign(members.size(), kUnset);
    std::vector<std::vector<NodeId>> pieces;
    for (std::uint32_t root = 0; root < members.size(); ++root) {
      if (component[root] != kUnset) continue;
      const auto id = static_cast<std::uint32_t>(pieces.size());
      pieces.emplace_back();
      std::vector<std::uint32_t> stack{root};
      component[root] = id;
      while (!stack.empty()) {
        auto i = stack.back();
        stack.pop_back();
        pieces.back().push_back(members[i]);
        for (NodeId u : g.neighbors(members[i])) {
          auto it = index.find(u);
          if (it != index.end() && component[it->second] == kUnset) {
            component[it->second] = id;
            stack.push_back(it->second);
          }
        }
      }
    }
    for (auto& piece : pieces) {
      if (piece.size() < min_size) {
        ++table.rejected_components;
        continue;
      }
      table.communities.push_back(describe_community(g, std::move(piece)));
    }
  }
  return table;
}

std::vector<std::vector<RawId>> parse_community_file(std::string_view text, std::string_view source) {
  std::vector<std::vector<RawId>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    std::vector<RawId> ids;
    std::size_t i = 0;
    bool comment = false;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j == i) break;
      auto token = line.substr(i, j - i);
      if (ids.empty() && token.front() == '#') {
        comment = true;
        break;
      }
      RawId value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                        ": malformed community id '" + std::string(token) + "'");
      }
      ids.push_back(value);
      i = j;
    }
    if (!comment && !ids.empty()) out.push_back(std::move(ids));
  }
  return out;
}

std::vector<std::vector<RawId>> read_community_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open community file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_community_file(text, path.string());
}

CommunityTable process_communities(const Graph& g, const IdMap& ids,
                                   const std::filesystem::path& path, std::size_t min_size) {
  auto raw = read_community_file(path);
  return process_communities(g, ids, raw, min_size);
}

CommunitySummary summarize(const CommunityTable& table) {
  CommunitySummary s;
  s.count = table.communities.size();
  if (s.count == 0) return s;
  for (const auto& c : table.communities) {
    s.mean_size += static_cast<double>(c.size());
    s.mean_internal_degree += c.avg_internal_degree;
    s.mean_internal_ratio += c.avg_internal_ratio;
    s.mean_diameter += c.diameter;
  }
  const auto count = static_cast<double>(s.count);
  s.mean_size /= count;
  s.mean_internal_degree /= count;
  s.mean_internal_ratio /= count;
  s.mean_diameter /= count;
  return s;
}

}  // namespace lcd
