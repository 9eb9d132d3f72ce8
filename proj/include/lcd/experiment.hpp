#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lcd/dataset.hpp"
#include "lcd/diffusion.hpp"
#include "lcd/extract.hpp"
#include "lcd/mov.hpp"

namespace lcd {

inline constexpr int kOutputSchemaVersion = 1;

/// One (algorithm, community, seed) cell. Metric fields are NaN for cells
/// whose algorithm failed.
struct ExperimentRecord {
  std::string dataset;
  std::string algorithm;
  std::string params;
  std::size_t community_id = 0;
  RawId seed_raw_id = 0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  std::size_t size = 0;
  double conductance = 0.0;
  double seconds = 0.0;
  std::string error;  // not emitted; set for failed cells

  bool failed() const { return !error.empty(); }
  bool operator==(const ExperimentRecord&) const;
};

struct AggregateRecord {
  std::string dataset;
  std::string algorithm;
  std::string metric;
  double mean = 0.0;
  double upper_semideviation = 0.0;
  double lower_semideviation = 0.0;
  std::size_t n_communities = 0;
  std::size_t failed_cells = 0;
};

struct Semideviation {
  double mean = 0.0;
  double upper = 0.0;  // RMS of the deviations above the mean
  double lower = 0.0;  // RMS of the deviations below the mean
};

Semideviation semideviation(std::span<const double> values);

/// Seed-level records -> per-community means -> mean and semideviations
/// across communities, for every metric and (dataset, algorithm) pair.
std::vector<AggregateRecord> aggregate(std::span<const ExperimentRecord> records);

/// Output set (parent ids) produced by an algorithm from one seed.
using SeedAlgorithm = std::function<std::vector<NodeId>(const Graph& g, NodeId seed)>;

struct BenchAlgorithm {
  std::string name;
  std::string params;
  SeedAlgorithm run;
};

struct BenchOptions {
  std::size_t sample = 0;  // seeds per community; 0 = every member
  std::uint64_t rng_seed = 1;
  unsigned threads = 1;
  bool timing = false;     // forces serial execution
};

/// Seeds used for one community: every member, or `sample` members chosen by
/// a generator seeded from rng_seed and the community id.
std::vector<NodeId> sample_seeds(const Community& c, std::size_t community_id, const BenchOptions& options);

/// Runs every algorithm from every sampled seed of every community. Rows come
/// back sorted by (algorithm order, community, seed).
std::vector<ExperimentRecord> run_bench(const Dataset& d, std::span<const BenchAlgorithm> algorithms,
                                        const BenchOptions& options);

/// Fills the metric columns of a record from an output set.
void score_output(const Graph& g, std::span<const NodeId> found, std::span<const NodeId> truth,
                  ExperimentRecord& record);

// Algorithm families.

/// Subgraph extraction; the output set is the extracted node set.
BenchAlgorithm extraction_algorithm(const std::string& method, const ExtractionSpec& base);

/// Top-tau nodes of a degree-normalized diffusion, seed excluded.
BenchAlgorithm augmentation_algorithm(const std::string& method, std::size_t tau, const DiffusionSpec& ppr,
                                      const DiffusionSpec& hk);

struct DetectOptions {
  DiffusionSpec ppr = DiffusionSpec::ppr(0.99, 1e-4);
  DiffusionSpec hk = DiffusionSpec::hk(4.0, 1e-4);
  ExtractionSpec extraction = ExtractionSpec::adaptive_spec();
  bool parent_sweep = false;
  MovOptions mov;
  int rounds = 10;
  std::size_t augment_size = 5;
};

/// hk, ppr, hks, pprs, movs, lemoneasy.
BenchAlgorithm detection_algorithm(const std::string& name, const DetectOptions& options);

/// Parses "kwalk3", "ppr", "ppr-d", ... into an extraction spec over `base`.
ExtractionSpec parse_extraction_method(const std::string& method, const ExtractionSpec& base);

// Emission.

std::vector<std::string> record_columns();
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);
void write_aggregates_csv(std::ostream& out, std::span<const AggregateRecord> aggregates);
std::string to_json(std::span<const ExperimentRecord> records, std::span<const AggregateRecord> aggregates);
std::vector<ExperimentRecord> records_from_json(const std::string& text);

}  // namespace lcd
