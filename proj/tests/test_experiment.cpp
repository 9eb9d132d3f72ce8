#include <gtest/gtest.h>

#include <numeric>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "lcd/community.hpp"
#include "lcd/experiment.hpp"
#include "lcd/generators.hpp"

using namespace lcd;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExperimentRecord row(std::size_t community, RawId seed, double f1) {
  ExperimentRecord r;
  r.dataset = "toy";
  r.algorithm = "alg";
  r.params = "a=1;b=2";
  r.community_id = community;
  r.seed_raw_id = seed;
  r.recall = r.precision = r.f1 = f1;
  r.size = 3;
  r.conductance = 0.1;
  r.seconds = 0.001;
  return r;
}

ExperimentRecord failed_row(std::size_t community, RawId seed) {
  auto r = row(community, seed, kNaN);
  r.conductance = r.recall = r.precision = kNaN;
  r.size = 0;
  r.error = "boom";
  return r;
}

Dataset synthetic_dataset(const SyntheticDataset& s, const std::string& name, std::size_t min_size = kMinCommunitySize) {
  Dataset d;
  d.name = name;
  d.graph = s.graph();
  for (NodeId v = 0; v < s.num_nodes; ++v) d.ids.intern(v);
  d.communities = process_communities(d.graph, d.ids, s.communities, min_size);
  return d;
}

const AggregateRecord& find(const std::vector<AggregateRecord>& aggs, const std::string& algorithm,
                            const std::string& metric) {
  for (const auto& a : aggs)
    if (a.algorithm == algorithm && a.metric == metric) return a;
  throw std::runtime_error("missing aggregate " + algorithm + "/" + metric);
}

std::string csv_without_seconds(std::vector<ExperimentRecord> records) {
  for (auto& r : records) r.seconds = 0.0;
  std::ostringstream out;
  write_records_csv(out, records);
  return out.str();
}

}  // namespace

TEST(Semideviation, HandComputed) {
  const std::vector<double> v = {1, 2, 3, 6};
  auto s = semideviation(v);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.upper, 3.0);
  EXPECT_DOUBLE_EQ(s.lower, std::sqrt(2.5));
  const std::vector<double> flat = {2, 2};
  EXPECT_DOUBLE_EQ(semideviation(flat).upper, 0.0);
  EXPECT_DOUBLE_EQ(semideviation(flat).lower, 0.0);
}

TEST(Aggregate, SeedThenCommunityMeans) {
  const std::vector<ExperimentRecord> records = {row(0, 1, 1.0), row(0, 2, 0.5), row(1, 3, 0.25), failed_row(2, 4)};
  auto aggs = aggregate(records);
  const auto& f = find(aggs, "alg", "f1");
  EXPECT_DOUBLE_EQ(f.mean, 0.5);
  EXPECT_DOUBLE_EQ(f.upper_semideviation, 0.25);
  EXPECT_DOUBLE_EQ(f.lower_semideviation, 0.25);
  EXPECT_EQ(f.n_communities, 2u);
  EXPECT_EQ(f.failed_cells, 1u);
  const auto& size = find(aggs, "alg", "size");
  EXPECT_DOUBLE_EQ(size.mean, 3.0);
}

TEST(Aggregate, GroupsByAlgorithm) {
  auto a = row(0, 1, 1.0);
  auto b = row(0, 1, 0.0);
  b.algorithm = "other";
  const std::vector<ExperimentRecord> records = {a, b};
  auto aggs = aggregate(records);
  EXPECT_DOUBLE_EQ(find(aggs, "alg", "f1").mean, 1.0);
  EXPECT_DOUBLE_EQ(find(aggs, "other", "f1").mean, 0.0);
}

TEST(Emission, CsvHeaderAndRoundTrip) {
  std::vector<ExperimentRecord> records = {row(0, 1, 1.0 / 3.0), failed_row(1, 99)};
  records[0].params = "x,y";  // needs quoting
  std::ostringstream out;
  write_records_csv(out, records);
  const auto text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "dataset,algorithm,params,community_id,seed_raw_id,recall,precision,f1,size,conductance,seconds");
  std::istringstream in(text);
  auto back = read_records_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], records[0]);
  EXPECT_EQ(back[1], records[1]);
  EXPECT_TRUE(std::isnan(back[1].f1));
}

TEST(Emission, JsonRoundTripOfEveryCsvRow) {
  auto d = synthetic_dataset(ring_of_cliques(4, 10), "ring");
  const std::vector<BenchAlgorithm> algorithms = {extraction_algorithm("kwalk2", {}),
                                                  detection_algorithm("ppr", {})};
  auto records = run_bench(d, algorithms, {});
  std::ostringstream csv;
  write_records_csv(csv, records);
  std::istringstream in(csv.str());
  auto from_csv = read_records_csv(in);
  auto from_json = records_from_json(to_json(from_csv, aggregate(from_csv)));
  ASSERT_EQ(from_json.size(), from_csv.size());
  for (std::size_t i = 0; i < from_csv.size(); ++i) EXPECT_EQ(from_json[i], from_csv[i]);
}

TEST(Runner, SampleSeeds) {
  auto d = synthetic_dataset(ring_of_cliques(3, 10), "ring");
  BenchOptions options;
  options.sample = 1;
  auto a = sample_seeds(d.communities.communities[0], 0, options);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a, sample_seeds(d.communities.communities[0], 0, options));
  options.sample = 0;
  EXPECT_EQ(sample_seeds(d.communities.communities[0], 0, options).size(), 10u);
  options.sample = 1;
  auto records = run_bench(d, std::vector<BenchAlgorithm>{extraction_algorithm("ppr-d", {})}, options);
  EXPECT_EQ(records.size(), 3u);
}

TEST(Runner, DeterministicAcrossThreadCounts) {
  auto d = synthetic_dataset(planted_partition(3, 20, 0.4, 0.02, 5), "pp");
  DetectOptions detect;
  detect.parent_sweep = true;
  const std::vector<BenchAlgorithm> algorithms = {detection_algorithm("hk", detect),
                                                  detection_algorithm("lemoneasy", detect),
                                                  augmentation_algorithm("kwalk3", 3, DiffusionSpec::ppr(0.99, 1e-4),
                                                                         DiffusionSpec::hk(4, 1e-4))};
  BenchOptions serial;
  BenchOptions parallel;
  parallel.threads = 4;
  EXPECT_EQ(csv_without_seconds(run_bench(d, algorithms, serial)),
            csv_without_seconds(run_bench(d, algorithms, parallel)));
}

TEST(Runner, FailuresBecomeRows) {
  auto d = synthetic_dataset(ring_of_cliques(3, 10), "ring");
  BenchAlgorithm broken{"broken", "", [](const Graph&, NodeId) -> std::vector<NodeId> {
                          throw std::runtime_error("nope");
                        }};
  auto records = run_bench(d, std::vector<BenchAlgorithm>{broken}, {});
  ASSERT_EQ(records.size(), 30u);
  for (const auto& r : records) {
    EXPECT_TRUE(r.failed());
    EXPECT_TRUE(std::isnan(r.f1));
  }
  EXPECT_EQ(find(aggregate(records), "broken", "f1").failed_cells, 30u);
}

TEST(Augmentation, CliqueSeedHasPerfectPrecision) {
  auto d = synthetic_dataset(ring_of_cliques(5, 10), "ring");
  for (const std::string method : {"ppr", "hk", "kwalk2", "kwalk3", "kwalk4"}) {
    auto alg = augmentation_algorithm(method, 3, DiffusionSpec::ppr(0.99, 1e-4), DiffusionSpec::hk(4, 1e-4));
    // Interior clique members only: bridge endpoints see the next clique.
    for (NodeId seed : {1u, 13u, 25u}) {
      auto found = alg.run(d.graph, seed);
      ASSERT_EQ(found.size(), 3u);
      EXPECT_TRUE(std::find(found.begin(), found.end(), seed) == found.end());
      for (NodeId v : found) EXPECT_EQ(v / 10, seed / 10) << method << " seed " << seed;
    }
  }
}

TEST(Augmentation, ShortSupportReturnsShorterList) {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}};
  auto g = Graph::from_edges(11, e);
  auto alg = augmentation_algorithm("kwalk2", 10, {}, {});
  auto found = alg.run(g, 5);
  EXPECT_EQ(found.size(), 4u);  // nodes within two hops, seed excluded
}

TEST(Detection, TwoCliquesFullGraphAlgorithms) {
  auto d = synthetic_dataset(two_cliques(5), "tc", 5);
  const std::vector<BenchAlgorithm> algorithms = {detection_algorithm("hk", {}), detection_algorithm("ppr", {})};
  for (const auto& r : run_bench(d, algorithms, {})) EXPECT_DOUBLE_EQ(r.f1, 1.0) << r.algorithm;
}

TEST(Detection, TwoCliquesSubgraphAlgorithmsWithWalkExtraction) {
  auto d = synthetic_dataset(two_cliques(5), "tc", 5);
  DetectOptions options;
  options.extraction = ExtractionSpec::kwalk_spec(3);
  options.parent_sweep = true;
  std::vector<BenchAlgorithm> algorithms;
  for (const std::string name : {"hks", "pprs", "movs", "lemoneasy"}) algorithms.push_back(detection_algorithm(name, options));
  for (const auto& r : run_bench(d, algorithms, {})) EXPECT_DOUBLE_EQ(r.f1, 1.0) << r.algorithm << " seed " << r.seed_raw_id;
}

TEST(Detection, SubgraphShrinksHeatKernelClusters) {
  auto d = synthetic_dataset(planted_partition(6, 20, 0.4, 0.05, 3), "pp");
  const std::vector<BenchAlgorithm> algorithms = {detection_algorithm("hk", {}), detection_algorithm("hks", {})};
  auto aggs = aggregate(run_bench(d, algorithms, {}));
  EXPECT_LE(find(aggs, "hks", "size").mean, find(aggs, "hk", "size").mean);
}

TEST(Detection, UnknownNamesRejected) {
  EXPECT_THROW(detection_algorithm("lemon", {}), std::invalid_argument);
  EXPECT_THROW(extraction_algorithm("walk", {}), std::invalid_argument);
  EXPECT_THROW(augmentation_algorithm("ppr", 0, {}, {}), std::invalid_argument);
  EXPECT_EQ(parse_extraction_method("kwalk4", {}).k, 4);
}
