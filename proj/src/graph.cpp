#include "lcd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lcd/errors.hpp"

namespace lcd {

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges) {
  std::vector<std::uint64_t> degree(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + degree[v];
  std::vector<NodeId> adjacency(offsets[n]);
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adjacency[cursor[u]++] = v;
    adjacency[cursor[v]++] = u;
  }

  // Sort and deduplicate each row, then compact.
  std::uint64_t write = 0;
  std::vector<std::uint64_t> compact(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) adjacency[write++] = *it;
    compact[v + 1] = write;
  }
  adjacency.resize(write);
  adjacency.shrink_to_fit();

  Graph g;
  g.offsets_ = std::move(compact);
  g.adjacency_ = std::move(adjacency);
  return g;
}

Graph Graph::from_csr(std::vector<std::uint64_t> offsets, std::vector<NodeId> adjacency) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != adjacency.size())
    throw DataError("malformed CSR offsets");
  const auto n = offsets.size() - 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets[v + 1] < offsets[v]) throw DataError("CSR offsets not monotone");
    for (auto i = offsets[v]; i < offsets[v + 1]; ++i) {
      const NodeId u = adjacency[i];
      if (u >= n || u == v) throw DataError("CSR row has invalid neighbor");
      if (i > offsets[v] && adjacency[i - 1] >= u) throw DataError("CSR row not strictly sorted");
    }
  }
  Graph g;
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(adjacency);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v)) {
      if (!g.has_edge(u, v)) throw DataError("CSR adjacency not symmetric");
    }
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

NodeId IdMap::intern(RawId label) {
  auto [it, inserted] = raw_to_dense_.try_emplace(label, static_cast<NodeId>(dense_to_raw_.size()));
  if (inserted) dense_to_raw_.push_back(label);
  return it->second;
}

std::optional<NodeId> IdMap::find(RawId label) const {
  auto it = raw_to_dense_.find(label);
  if (it == raw_to_dense_.end()) return std::nullopt;
  return it->second;
}

IdMap IdMap::compose(const IdMap& outer) const {
  IdMap out;
  out.dense_to_raw_.reserve(size());
  for (RawId parent : dense_to_raw_) out.intern(outer.label(static_cast<NodeId>(parent)));
  return out;
}

namespace {

bool parse_uint(std::string_view token, RawId& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string_view next_token(std::string_view& line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
  std::size_t j = i;
  while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != ',') ++j;
  auto token = line.substr(i, j - i);
  line.remove_prefix(j);
  return token;
}

}  // namespace

LabeledGraph parse_edge_list(std::string_view text, std::string_view source) {
  IdMap ids;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;

    auto rest = line;
    auto first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    auto second = next_token(rest);
    RawId u = 0, v = 0;
    if (second.empty() || !parse_uint(first, u) || !parse_uint(second, v)) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": malformed edge line '" << line << "'";
      throw DataError(msg.str());
    }
    const NodeId du = ids.intern(u);
    const NodeId dv = ids.intern(v);
    edges.emplace_back(du, dv);
  }
  if (ids.size() == 0) throw DataError(std::string(source) + ": edge list contains no nodes");
  if (ids.size() > std::numeric_limits<NodeId>::max())
    throw DataError(std::string(source) + ": too many nodes");
  return {Graph::from_edges(static_cast<NodeId>(ids.size()), edges), std::move(ids)};
}

LabeledGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open edge list " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw DataError("error reading " + path.string());
  return parse_edge_list(text, path.string());
}

std::vector<NodeId> connected_components(const Graph& g, NodeId* num_components) {
  constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();
  const NodeId n = g.num_nodes();
  std::vector<NodeId> label(n, kUnset);
  std::vector<NodeId> stack;
  NodeId next = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId u : g.neighbors(v)) {
        if (label[u] == kUnset) {
          label[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  if (num_components) *num_components = next;
  return label;
}

bool is_connected(const Graph& g) {
  NodeId count = 0;
  connected_components(g, &count);
  return count <= 1;
}

LabeledGraph extract_lcc(const Graph& g, const IdMap& ids) {
  if (g.num_nodes() == 0) throw std::invalid_argument("extract_lcc: empty graph");
  NodeId count = 0;
  auto label = connected_components(g, &count);
  std::vector<std::size_t> size(count, 0);
  std::vector<RawId> min_label(count, std::numeric_limits<RawId>::max());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    ++size[label[v]];
    min_label[label[v]] = std::min(min_label[label[v]], ids.label(v));
  }
  NodeId best = 0;
  for (NodeId c = 1; c < count; ++c) {
    if (size[c] > size[best] || (size[c] == size[best] && min_label[c] < min_label[best])) best = c;
  }
  std::vector<NodeId> keep;
  keep.reserve(size[best]);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (label[v] == best) keep.push_back(v);
  }
  auto sub = induced_subgraph(g, keep);
  return {std::move(sub.graph), sub.ids.compose(ids)};
}

LabeledGraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("induced_subgraph: empty node set");
  std::unordered_map<NodeId, NodeId> local;
  local.reserve(nodes.size() * 2);
  IdMap ids;
  for (NodeId v : nodes) {
    if (!g.contains(v)) throw std::invalid_argument("induced_subgraph: node id out of range");
    if (!local.emplace(v, static_cast<NodeId>(local.size())).second)
      throw std::invalid_argument("induced_subgraph: duplicate node id");
    ids.intern(v);
  }
  std::vector<std::uint64_t> offsets(nodes.size() + 1, 0);
  std::vector<NodeId> adjacency;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto row_start = adjacency.size();
    for (NodeId u : g.neighbors(nodes[i])) {
      auto it = local.find(u);
      if (it != local.end()) adjacency.push_back(it->second);
    }
    std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(row_start), adjacency.end());
    offsets[i + 1] = adjacency.size();
  }
  return {Graph::from_csr(std::move(offsets), std::move(adjacency)), std::move(ids)};
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.num_nodes(), std::numeric_limits<std::uint32_t>::max());
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId v = frontier.front();
    frontier.pop();
    for (NodeId u : g.neighbors(v)) {
      if (dist[u] == std::numeric_limits<std::uint32_t>::max()) {
        dist[u] = dist[v] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

}  // namespace lcd
