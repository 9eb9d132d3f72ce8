#include "lcd/dataset.hpp"

#include <cstring>
#include <limits>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "lcd/errors.hpp"

namespace lcd {
namespace {

constexpr char kMagic[8] = {'L', 'C', 'D', 'G', 'R', 'A', 'P', 'H'};
constexpr std::uint32_t kGraphVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void read_pod(std::istream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}

}  // namespace

void write_graph_binary(const Graph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kGraphVersion);
  write_pod(out, static_cast<std::uint64_t>(g.num_nodes()));
  write_pod(out, static_cast<std::uint64_t>(g.adjacency().size()));
  out.write(reinterpret_cast<const char*>(g.offsets().data()),
            static_cast<std::streamsize>(g.offsets().size_bytes()));
  out.write(reinterpret_cast<const char*>(g.adjacency().data()),
            static_cast<std::streamsize>(g.adjacency().size_bytes()));
  if (!out) throw DataError("error writing " + file.string());
}

Graph read_graph_binary(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open " + file.string());
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  std::uint32_t version = 0;
  std::uint64_t n = 0, entries = 0;
  read_pod(in, version);
  read_pod(in, n);
  read_pod(in, entries);
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0 || version != kGraphVersion)
    throw DataError(file.string() + ": not a graph bundle file");
  if (n >= std::numeric_limits<NodeId>::max()) throw DataError(file.string() + ": node count too large");
  std::vector<std::uint64_t> offsets(n + 1);
  std::vector<NodeId> adjacency(entries);
  in.read(reinterpret_cast<char*>(offsets.data()), static_cast<std::streamsize>(offsets.size() * sizeof(std::uint64_t)));
  in.read(reinterpret_cast<char*>(adjacency.data()), static_cast<std::streamsize>(adjacency.size() * sizeof(NodeId)));
  if (!in) throw DataError(file.string() + ": truncated graph file");
  return Graph::from_csr(std::move(offsets), std::move(adjacency));
}

Dataset preprocess(const std::filesystem::path& edge_file, const std::filesystem::path& community_file,
                   std::string name, std::size_t min_size) {
  auto raw = load_edge_list(edge_file);
  auto lcc = extract_lcc(raw.graph, raw.ids);
  Dataset d;
  d.name = std::move(name);
  d.communities = process_communities(lcc.graph, lcc.ids, community_file, min_size);
  d.graph = std::move(lcc.graph);
  d.ids = std::move(lcc.ids);
  return d;
}

void save_dataset(const Dataset& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_graph_binary(d.graph, dir / "graph.bin");

  std::ofstream ids(dir / "ids.txt");
  for (RawId label : d.ids.labels()) ids << label << '\n';

  std::ofstream cmty(dir / "communities.txt");
  for (const auto& c : d.communities.communities) {
    for (std::size_t i = 0; i < c.members.size(); ++i) cmty << (i ? "\t" : "") << c.members[i];
    cmty << '\n';
  }

  std::ofstream stats(dir / "stats.json");
  stats << stats_json(dataset_stats(d)) << '\n';
  if (!ids || !cmty || !stats) throw DataError("error writing dataset bundle to " + dir.string());
}

Dataset load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw DataError("dataset directory not found: " + dir.string());
  Dataset d;
  d.name = dir.filename().string();
  if (d.name.empty()) d.name = dir.parent_path().filename().string();
  d.graph = read_graph_binary(dir / "graph.bin");

  std::ifstream ids(dir / "ids.txt");
  if (!ids) throw DataError("missing ids.txt in " + dir.string());
  RawId label = 0;
  while (ids >> label) d.ids.intern(label);
  if (d.ids.size() != d.graph.num_nodes()) throw DataError("ids.txt does not match graph.bin in " + dir.string());

  auto raw = read_community_file(dir / "communities.txt");
  for (auto& line : raw) {
    std::vector<NodeId> members;
    members.reserve(line.size());
    for (RawId v : line) {
      if (v >= d.graph.num_nodes()) throw DataError("community member out of range in " + dir.string());
      members.push_back(static_cast<NodeId>(v));
    }
    d.communities.communities.push_back(describe_community(d.graph, std::move(members)));
  }
  d.communities.raw_communities = d.communities.communities.size();

  std::ifstream stats(dir / "stats.json");
  if (stats) {
    auto j = nlohmann::json::parse(stats, nullptr, false);
    if (!j.is_discarded()) {
      d.name = j.value("dataset", d.name);
      d.communities.raw_communities = j.value("raw_communities", d.communities.raw_communities);
      d.communities.dropped_members = j.value("dropped_members", std::size_t{0});
      d.communities.rejected_components = j.value("rejected_components", std::size_t{0});
    }
  }
  return d;
}

DatasetStats dataset_stats(const Dataset& d) {
  DatasetStats s;
  s.name = d.name;
  s.nodes = d.graph.num_nodes();
  s.edges = d.graph.num_edges();
  s.summary = summarize(d.communities);
  s.raw_communities = d.communities.raw_communities;
  s.dropped_members = d.communities.dropped_members;
  s.rejected_components = d.communities.rejected_components;
  return s;
}

std::string stats_json(const DatasetStats& s) {
  nlohmann::ordered_json j;
  j["dataset"] = s.name;
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["communities"] = s.summary.count;
  j["mean_size"] = s.summary.mean_size;
  j["mean_internal_degree"] = s.summary.mean_internal_degree;
  j["mean_internal_ratio"] = s.summary.mean_internal_ratio;
  j["mean_diameter"] = s.summary.mean_diameter;
  j["raw_communities"] = s.raw_communities;
  j["dropped_members"] = s.dropped_members;
  j["rejected_components"] = s.rejected_components;
  return j.dump(2);
}

std::string stats_csv(const DatasetStats& s, bool header) {
  std::ostringstream out;
  if (header) out << "dataset,nodes,edges,communities,mean_size,mean_dC,mean_dC_over_d,mean_diameter\n";
  out << s.name << ',' << s.nodes << ',' << s.edges << ',' << s.summary.count << ',' << std::fixed
      << std::setprecision(1) << s.summary.mean_size << ',' << s.summary.mean_internal_degree << ','
      << std::setprecision(2) << s.summary.mean_internal_ratio << ',' << std::setprecision(1)
      << s.summary.mean_diameter << '\n';
  return out.str();
}

}  // namespace lcd
