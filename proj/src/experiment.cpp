#include "lcd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lcd/errors.hpp"
#include "lcd/lemoneasy.hpp"
#include "lcd/sweep.hpp"

namespace lcd {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_param(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

bool ExperimentRecord::operator==(const ExperimentRecord& o) const {
  return dataset == o.dataset && algorithm == o.algorithm && params == o.params &&
         community_id == o.community_id && seed_raw_id == o.seed_raw_id && same_double(recall, o.recall) &&
         same_double(precision, o.precision) && same_double(f1, o.f1) && size == o.size &&
         same_double(conductance, o.conductance) && same_double(seconds, o.seconds) && failed() == o.failed();
}

Semideviation semideviation(std::span<const double> values) {
  Semideviation s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double up = 0.0, down = 0.0;
  std::size_t n_up = 0, n_down = 0;
  for (double v : values) {
    const double dev = v - s.mean;
    if (dev > 0.0) {
      up += dev * dev;
      ++n_up;
    } else if (dev < 0.0) {
      down += dev * dev;
      ++n_down;
    }
  }
  s.upper = n_up ? std::sqrt(up / static_cast<double>(n_up)) : 0.0;
  s.lower = n_down ? std::sqrt(down / static_cast<double>(n_down)) : 0.0;
  return s;
}

std::vector<AggregateRecord> aggregate(std::span<const ExperimentRecord> records) {
  using Getter = double (*)(const ExperimentRecord&);
  static const std::pair<const char*, Getter> metrics[] = {
      {"recall", [](const ExperimentRecord& r) { return r.recall; }},
      {"precision", [](const ExperimentRecord& r) { return r.precision; }},
      {"f1", [](const ExperimentRecord& r) { return r.f1; }},
      {"size", [](const ExperimentRecord& r) { return r.failed() ? kNaN : static_cast<double>(r.size); }},
      {"conductance", [](const ExperimentRecord& r) { return r.conductance; }},
      {"seconds", [](const ExperimentRecord& r) { return r.seconds; }},
  };

  // Keep first-seen order of (dataset, algorithm) groups.
  std::vector<std::pair<std::string, std::string>> groups;
  std::map<std::pair<std::string, std::string>, std::vector<const ExperimentRecord*>> rows;
  for (const auto& r : records) {
    auto key = std::make_pair(r.dataset, r.algorithm);
    auto [it, inserted] = rows.try_emplace(key);
    if (inserted) groups.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<AggregateRecord> out;
  for (const auto& key : groups) {
    const auto& group = rows[key];
    const auto failed = static_cast<std::size_t>(
        std::count_if(group.begin(), group.end(), [](const ExperimentRecord* r) { return r->failed(); }));
    for (const auto& [metric, get] : metrics) {
      std::map<std::size_t, std::pair<double, std::size_t>> per_community;
      for (const auto* r : group) {
        const double v = get(*r);
        if (std::isnan(v)) continue;
        auto& [sum, count] = per_community[r->community_id];
        sum += v;
        ++count;
      }
      std::vector<double> means;
      means.reserve(per_community.size());
      for (const auto& [id, acc] : per_community) means.push_back(acc.first / static_cast<double>(acc.second));
      auto s = semideviation(means);
      AggregateRecord a;
      a.dataset = key.first;
      a.algorithm = key.second;
      a.metric = metric;
      a.mean = means.empty() ? kNaN : s.mean;
      a.upper_semideviation = s.upper;
      a.lower_semideviation = s.lower;
      a.n_communities = means.size();
      a.failed_cells = failed;
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::vector<NodeId> sample_seeds(const Community& c, std::size_t community_id, const BenchOptions& options) {
  std::vector<NodeId> seeds = c.members;
  if (options.sample == 0 || options.sample >= seeds.size()) return seeds;
  std::mt19937_64 rng(options.rng_seed * 0x9E3779B97F4A7C15ULL + community_id);
  // Partial Fisher-Yates with explicit index draws, portable across libraries.
  for (std::size_t i = 0; i < options.sample; ++i) {
    const auto j = i + static_cast<std::size_t>(rng() % (seeds.size() - i));
    std::swap(seeds[i], seeds[j]);
  }
  seeds.resize(options.sample);
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

void score_output(const Graph& g, std::span<const NodeId> found, std::span<const NodeId> truth,
                  ExperimentRecord& record) {
  if (found.empty()) throw AlgorithmError("algorithm returned an empty set");
  record.size = found.size();
  record.recall = recall(found, truth);
  record.precision = precision(found, truth);
  record.f1 = f1_score(record.precision, record.recall);
  record.conductance = found.size() < g.num_nodes() ? conductance(g, found) : kNaN;
}

std::vector<ExperimentRecord> run_bench(const Dataset& d, std::span<const BenchAlgorithm> algorithms,
                                        const BenchOptions& options) {
  struct Cell {
    std::size_t algorithm;
    std::size_t community;
    NodeId seed;
  };
  std::vector<Cell> cells;
  std::vector<std::vector<NodeId>> seeds_per_community;
  for (std::size_t c = 0; c < d.communities.communities.size(); ++c)
    seeds_per_community.push_back(sample_seeds(d.communities.communities[c], c, options));
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (std::size_t c = 0; c < seeds_per_community.size(); ++c) {
      for (NodeId s : seeds_per_community[c]) cells.push_back({a, c, s});
    }
  }

  std::vector<ExperimentRecord> records(cells.size());
  auto run_cell = [&](std::size_t i) {
    const auto& cell = cells[i];
    const auto& algorithm = algorithms[cell.algorithm];
    const auto& truth = d.communities.communities[cell.community].members;
    auto& r = records[i];
    r.dataset = d.name;
    r.algorithm = algorithm.name;
    r.params = algorithm.params;
    r.community_id = cell.community;
    r.seed_raw_id = d.ids.label(cell.seed);
    const auto start = std::chrono::steady_clock::now();
    try {
      auto found = algorithm.run(d.graph, cell.seed);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      score_output(d.graph, found, truth, r);
    } catch (const std::exception& e) {
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      r.error = e.what();
      r.recall = r.precision = r.f1 = r.conductance = kNaN;
      r.size = 0;
    }
  };

  const unsigned threads = options.timing ? 1u : std::max(1u, options.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

ExtractionSpec parse_extraction_method(const std::string& method, const ExtractionSpec& base) {
  ExtractionSpec spec = base;
  if (method.rfind("kwalk", 0) == 0) {
    int k = 0;
    const auto digits = method.substr(5);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw std::invalid_argument("unknown extraction method '" + method + "'");
    spec.method = ExtractionMethod::kwalk;
    spec.k = k;
  } else if (method == "ppr") {
    spec.method = ExtractionMethod::ppr;
  } else if (method == "ppr-d") {
    spec.method = ExtractionMethod::ppr_adaptive;
  } else {
    throw std::invalid_argument("unknown extraction method '" + method + "'");
  }
  spec.validate();
  return spec;
}

namespace {

std::string extraction_params(const ExtractionSpec& s) {
  std::ostringstream out;
  switch (s.method) {
    case ExtractionMethod::kwalk: out << "k=" << s.k; break;
    case ExtractionMethod::ppr: out << "alpha=" << format_param(s.alpha) << ";eps=" << format_param(s.epsilon); break;
    case ExtractionMethod::ppr_adaptive:
      out << "alpha=" << format_param(s.alpha) << ";deg_est="
          << (s.degree_estimate ? format_param(*s.degree_estimate) : std::string("avg"));
      break;
  }
  out << ";target=" << s.target_nodes;
  if (s.normalize_plus_one) out << ";norm=d+1";
  return out.str();
}

std::string diffusion_params(const DiffusionSpec& s) {
  switch (s.kind) {
    case DiffusionKind::kwalk: return "k=" + std::to_string(s.k);
    case DiffusionKind::ppr: return "alpha=" + format_param(s.alpha) + ";eps=" + format_param(s.epsilon);
    case DiffusionKind::hk: return "t=" + format_param(s.t) + ";eps=" + format_param(s.epsilon);
  }
  return {};
}

std::vector<NodeId> to_parent(const IdMap& ids, std::span<const NodeId> local) {
  std::vector<NodeId> out;
  out.reserve(local.size());
  for (NodeId v : local) out.push_back(static_cast<NodeId>(ids.label(v)));
  return out;
}

// Best sweep prefix over the degree-normalized support of `scores`.
std::vector<NodeId> diffusion_cluster(const Graph& g, const SparseVec& scores) {
  auto order = rank_support(degree_normalize(g, scores));
  if (order.empty()) throw AlgorithmError("diffusion has empty support");
  return sweep(g, order).best_prefix;
}

// Sweep of a subgraph ordering, scored in the subgraph or in the parent.
std::vector<NodeId> subgraph_sweep(const Graph& parent, const ExtractionResult& ex,
                                   std::span<const NodeId> local_order, bool parent_sweep) {
  if (parent_sweep) return sweep_in_parent(parent, to_parent(ex.id_map, local_order)).best_prefix;
  return to_parent(ex.id_map, sweep(ex.subgraph, local_order).best_prefix);
}

}  // namespace

BenchAlgorithm extraction_algorithm(const std::string& method, const ExtractionSpec& base) {
  auto spec = parse_extraction_method(method, base);
  return {method, extraction_params(spec),
          [spec](const Graph& g, NodeId seed) { return extract(g, seed, spec).nodes; }};
}

BenchAlgorithm augmentation_algorithm(const std::string& method, std::size_t tau, const DiffusionSpec& ppr,
                                      const DiffusionSpec& hk) {
  if (tau < 1) throw std::invalid_argument("tau must be at least 1");
  DiffusionSpec spec;
  if (method == "ppr") {
    spec = ppr;
  } else if (method == "hk") {
    spec = hk;
  } else if (method.rfind("kwalk", 0) == 0) {
    spec = DiffusionSpec::kwalk(parse_extraction_method(method, {}).k);
  } else {
    throw std::invalid_argument("unknown augmentation method '" + method + "'");
  }
  spec.validate();
  return {method, diffusion_params(spec) + ";tau=" + std::to_string(tau), [spec, tau](const Graph& g, NodeId seed) {
            auto scores = degree_normalize(g, diffuse(g, seed, spec));
            scores.erase(seed);
            if (scores.empty()) throw AlgorithmError("diffusion reached no node besides the seed");
            return top_k(scores, tau);
          }};
}

BenchAlgorithm detection_algorithm(const std::string& name, const DetectOptions& o) {
  const std::string sweep_mode = o.parent_sweep ? ";sweep=parent" : ";sweep=subgraph";
  const std::string extraction = "extract=" + o.extraction.name() + "(" + extraction_params(o.extraction) + ")";
  if (name == "ppr" || name == "hk") {
    const auto spec = name == "ppr" ? o.ppr : o.hk;
    return {name, diffusion_params(spec),
            [spec](const Graph& g, NodeId seed) { return diffusion_cluster(g, diffuse(g, seed, spec)); }};
  }
  if (name == "pprs" || name == "hks") {
    const auto spec = name == "pprs" ? o.ppr : o.hk;
    return {name, diffusion_params(spec) + ";" + extraction + sweep_mode, [spec, o](const Graph& g, NodeId seed) {
              auto ex = extract(g, seed, o.extraction);
              auto scores = diffuse(ex.subgraph, ex.seed_local, spec);
              auto order = rank_support(degree_normalize(ex.subgraph, scores));
              if (order.empty()) throw AlgorithmError("diffusion has empty support");
              return subgraph_sweep(g, ex, order, o.parent_sweep);
            }};
  }
  if (name == "movs") {
    return {name, "gamma=" + format_param(o.mov.gamma) + ";" + extraction + sweep_mode,
            [o](const Graph& g, NodeId seed) {
              auto ex = extract(g, seed, o.extraction);
              // MOV needs a connected graph: keep the seed's component.
              NodeId count = 0;
              auto label = connected_components(ex.subgraph, &count);
              if (count > 1) {
                std::vector<NodeId> keep;
                for (NodeId v = 0; v < ex.subgraph.num_nodes(); ++v)
                  if (label[v] == label[ex.seed_local]) keep.push_back(v);
                auto sub = induced_subgraph(ex.subgraph, keep);
                ex.id_map = sub.ids.compose(ex.id_map);
                ex.subgraph = std::move(sub.graph);
                ex.seed_local = *ex.id_map.find(seed);
              }
              const NodeId seeds[] = {ex.seed_local};
              auto solution = mov_solve(ex.subgraph, mov_seed_vector(ex.subgraph, seeds), o.mov);
              std::vector<NodeId> order(ex.subgraph.num_nodes());
              std::iota(order.begin(), order.end(), NodeId{0});
              std::stable_sort(order.begin(), order.end(),
                               [&](NodeId a, NodeId b) { return solution.x[a] > solution.x[b]; });
              return subgraph_sweep(g, ex, order, o.parent_sweep);
            }};
  }
  if (name == "lemoneasy") {
    LemonEasyOptions lo;
    lo.rounds = o.rounds;
    lo.augment_size = o.augment_size;
    lo.extraction = o.extraction;
    lo.parent_sweep = o.parent_sweep;
    return {name, "r=" + std::to_string(o.rounds) + ";f=" + std::to_string(o.augment_size) + ";" + extraction + sweep_mode,
            [lo](const Graph& g, NodeId seed) { return lemoneasy(g, seed, lo).sweep.best_prefix; }};
  }
  throw std::invalid_argument("unknown detection algorithm '" + name + "'");
}

std::vector<std::string> record_columns() {
  return {"dataset", "algorithm", "params", "community_id", "seed_raw_id", "recall",
          "precision", "f1", "size", "conductance", "seconds"};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_double_field(const std::string& s) {
  if (s.empty()) return kNaN;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DataError("bad numeric field '" + s + "'");
  return v;
}

template <typename T>
T parse_uint_field(const std::string& s) {
  T v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DataError("bad integer field '" + s + "'");
  return v;
}

}  // namespace

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  const auto cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    out << csv_field(r.dataset) << ',' << csv_field(r.algorithm) << ',' << csv_field(r.params) << ','
        << r.community_id << ',' << r.seed_raw_id << ',' << format_double(r.recall) << ','
        << format_double(r.precision) << ',' << format_double(r.f1) << ',' << r.size << ','
        << format_double(r.conductance) << ',' << format_double(r.seconds) << '\n';
  }
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty records CSV");
  if (split_csv_line(line) != record_columns()) throw DataError("unexpected records CSV header");
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != record_columns().size()) throw DataError("records CSV row has wrong column count");
    ExperimentRecord r;
    r.dataset = f[0];
    r.algorithm = f[1];
    r.params = f[2];
    r.community_id = parse_uint_field<std::size_t>(f[3]);
    r.seed_raw_id = parse_uint_field<RawId>(f[4]);
    r.recall = parse_double_field(f[5]);
    r.precision = parse_double_field(f[6]);
    r.f1 = parse_double_field(f[7]);
    r.size = parse_uint_field<std::size_t>(f[8]);
    r.conductance = parse_double_field(f[9]);
    r.seconds = parse_double_field(f[10]);
    if (std::isnan(r.f1)) r.error = "failed";
    out.push_back(std::move(r));
  }
  return out;
}

void write_aggregates_csv(std::ostream& out, std::span<const AggregateRecord> aggregates) {
  out << "dataset,algorithm,metric,mean,upper_semideviation,lower_semideviation,n_communities,failed_cells\n";
  for (const auto& a : aggregates) {
    out << csv_field(a.dataset) << ',' << csv_field(a.algorithm) << ',' << a.metric << ',' << format_double(a.mean)
        << ',' << format_double(a.upper_semideviation) << ',' << format_double(a.lower_semideviation) << ','
        << a.n_communities << ',' << a.failed_cells << '\n';
  }
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double from_json_number(const nlohmann::json& j) { return j.is_null() ? kNaN : j.get<double>(); }

}  // namespace

std::string to_json(std::span<const ExperimentRecord> records, std::span<const AggregateRecord> aggregates) {
  nlohmann::ordered_json root;
  root["schema_version"] = kOutputSchemaVersion;
  root["semideviation"] = "root-mean-square of the one-sided deviations of per-community means";
  auto& rows = root["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["dataset"] = r.dataset;
    j["algorithm"] = r.algorithm;
    j["params"] = r.params;
    j["community_id"] = r.community_id;
    j["seed_raw_id"] = r.seed_raw_id;
    j["recall"] = number_or_null(r.recall);
    j["precision"] = number_or_null(r.precision);
    j["f1"] = number_or_null(r.f1);
    j["size"] = r.size;
    j["conductance"] = number_or_null(r.conductance);
    j["seconds"] = number_or_null(r.seconds);
    if (r.failed()) j["error"] = r.error;
    rows.push_back(std::move(j));
  }
  auto& aggs = root["aggregates"] = nlohmann::ordered_json::array();
  for (const auto& a : aggregates) {
    nlohmann::ordered_json j;
    j["dataset"] = a.dataset;
    j["algorithm"] = a.algorithm;
    j["metric"] = a.metric;
    j["mean"] = number_or_null(a.mean);
    j["upper_semideviation"] = number_or_null(a.upper_semideviation);
    j["lower_semideviation"] = number_or_null(a.lower_semideviation);
    j["n_communities"] = a.n_communities;
    j["failed_cells"] = a.failed_cells;
    aggs.push_back(std::move(j));
  }
  return root.dump(2);
}

std::vector<ExperimentRecord> records_from_json(const std::string& text) {
  auto root = nlohmann::json::parse(text);
  if (root.value("schema_version", 0) != kOutputSchemaVersion) throw DataError("unsupported output schema version");
  std::vector<ExperimentRecord> out;
  for (const auto& j : root.at("records")) {
    ExperimentRecord r;
    r.dataset = j.at("dataset").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.params = j.at("params").get<std::string>();
    r.community_id = j.at("community_id").get<std::size_t>();
    r.seed_raw_id = j.at("seed_raw_id").get<RawId>();
    r.recall = from_json_number(j.at("recall"));
    r.precision = from_json_number(j.at("precision"));
    r.f1 = from_json_number(j.at("f1"));
    r.size = j.at("size").get<std::size_t>();
    r.conductance = from_json_number(j.at("conductance"));
    r.seconds = from_json_number(j.at("seconds"));
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lcd
