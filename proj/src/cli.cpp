#include "lcd/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "lcd/dataset.hpp"
#include "lcd/errors.hpp"
#include "lcd/experiment.hpp"
#include "lcd/generators.hpp"

namespace lcd {
namespace {

struct BenchFlags {
  std::string dataset;
  std::string out;
  std::string aggregates_out;
  std::string format = "csv";
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool timing = false;
  std::vector<std::string> methods;
};

void add_bench_flags(CLI::App* cmd, BenchFlags& f) {
  cmd->add_option("--dataset", f.dataset, "Preprocessed dataset directory")->required();
  cmd->add_option("--out", f.out, "Output file (stdout if omitted)");
  cmd->add_option("--aggregates", f.aggregates_out, "CSV file for aggregates (csv format only)");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--sample", f.sample, "Seeds per community (0 = every member)");
  cmd->add_option("--seed", f.seed, "RNG seed for seed sampling");
  cmd->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", f.timing, "Serial execution for wall-clock timing");
}

void add_extraction_flags(CLI::App* cmd, ExtractionSpec& spec, std::string& method, double& deg_est) {
  cmd->add_option("--extract", method, "Extraction method: kwalk2, kwalk3, kwalk4, ppr, ppr-d");
  cmd->add_option("--target-nodes", spec.target_nodes, "Target extraction size")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", spec.alpha, "PageRank teleport complement");
  cmd->add_option("--deg-est", deg_est, "Community degree estimate for ppr-d (graph average if omitted)");
  cmd->add_flag("--norm-plus-one", spec.normalize_plus_one, "Rank by x/(d+1) instead of x/d");
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

void emit(const BenchFlags& f, std::span<const ExperimentRecord> records, std::ostream& out) {
  const auto aggregates = aggregate(records);
  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw DataError("cannot write " + f.out);
  }
  std::ostream& sink = f.out.empty() ? out : file;
  if (f.format == "json") {
    sink << to_json(records, aggregates) << '\n';
    return;
  }
  write_records_csv(sink, records);
  if (!f.aggregates_out.empty()) {
    std::ofstream agg(f.aggregates_out);
    if (!agg) throw DataError("cannot write " + f.aggregates_out);
    write_aggregates_csv(agg, aggregates);
  }
}

int run_bench_command(const BenchFlags& f, const std::vector<BenchAlgorithm>& algorithms, std::ostream& out,
                      std::ostream& err) {
  const auto dataset = load_dataset(f.dataset);
  BenchOptions options;
  options.sample = f.sample;
  options.rng_seed = f.seed;
  options.threads = f.threads;
  options.timing = f.timing;
  const auto records = run_bench(dataset, algorithms, options);
  emit(f, records, out);
  const auto failed = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.failed(); });
  if (failed > 0) err << failed << " of " << records.size() << " cells failed\n";
  if (!records.empty() && static_cast<std::size_t>(failed) == records.size()) return kExitAllFailed;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local community detection benchmarks"};
  app.require_subcommand(1);

  // preprocess
  std::string edge_file, community_file, out_dir, name;
  std::size_t min_size = kMinCommunitySize;
  auto* preprocess_cmd = app.add_subcommand("preprocess", "Build a dataset bundle from SNAP-style files");
  preprocess_cmd->add_option("--edges", edge_file, "Edge list")->required();
  preprocess_cmd->add_option("--communities", community_file, "Community file")->required();
  preprocess_cmd->add_option("--out", out_dir, "Bundle directory")->required();
  preprocess_cmd->add_option("--name", name, "Dataset name (directory name if omitted)");
  preprocess_cmd->add_option("--min-size", min_size, "Smallest community kept")->check(CLI::PositiveNumber);

  // stats
  std::string stats_dataset, stats_format = "text";
  auto* stats_cmd = app.add_subcommand("stats", "Report graph and community statistics");
  stats_cmd->add_option("--dataset", stats_dataset, "Dataset directory")->required();
  stats_cmd->add_option("--format", stats_format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));

  // gen
  std::string kind, gen_out;
  std::size_t count = 10, size = 10, per_community = 0, blocks = 4;
  double p_in = 0.5, p_out = 0.01;
  std::uint64_t gen_seed = 7;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance (edges.txt, communities.txt)");
  gen_cmd->add_option("--kind", kind, "Instance family")
      ->required()
      ->check(CLI::IsMember({"ring", "path", "two-cliques", "planted"}));
  gen_cmd->add_option("--out", gen_out, "Output directory")->required();
  gen_cmd->add_option("--count", count, "Number of cliques (ring, path)");
  gen_cmd->add_option("--size", size, "Clique or block size");
  gen_cmd->add_option("--per-community", per_community, "Cliques per community (path; default all)");
  gen_cmd->add_option("--blocks", blocks, "Number of blocks (planted)");
  gen_cmd->add_option("--p-in", p_in, "Within-block edge probability (planted)");
  gen_cmd->add_option("--p-out", p_out, "Between-block edge probability (planted)");
  gen_cmd->add_option("--seed", gen_seed, "RNG seed (planted)");

  // extract-bench
  BenchFlags extract_flags;
  extract_flags.methods = {"kwalk2,kwalk3,kwalk4,ppr,ppr-d"};
  ExtractionSpec extract_base;
  double extract_deg_est = 0.0;
  auto* extract_cmd = app.add_subcommand("extract-bench", "Recall of subgraph extraction methods");
  add_bench_flags(extract_cmd, extract_flags);
  extract_cmd->add_option("--methods", extract_flags.methods, "Comma-separated methods");
  extract_cmd->add_option("--target-nodes", extract_base.target_nodes, "Target extraction size")
      ->check(CLI::PositiveNumber);
  extract_cmd->add_option("--alpha", extract_base.alpha, "PageRank teleport complement");
  extract_cmd->add_option("--eps", extract_base.epsilon, "Accuracy of fixed-parameter ppr");
  extract_cmd->add_option("--deg-est", extract_deg_est, "Community degree estimate for ppr-d");
  extract_cmd->add_flag("--norm-plus-one", extract_base.normalize_plus_one, "Rank by x/(d+1) instead of x/d");

  // augment-bench
  BenchFlags augment_flags;
  augment_flags.methods = {"ppr,hk,kwalk2,kwalk3,kwalk4"};
  std::size_t tau = 3;
  double aug_alpha = 0.99, aug_eps = 1e-4, aug_t = 4.0;
  auto* augment_cmd = app.add_subcommand("augment-bench", "Precision of top-tau seed augmentation");
  add_bench_flags(augment_cmd, augment_flags);
  augment_cmd->add_option("--methods", augment_flags.methods, "Comma-separated methods");
  augment_cmd->add_option("--tau", tau, "Nodes added per seed")->check(CLI::PositiveNumber);
  augment_cmd->add_option("--alpha", aug_alpha, "PageRank teleport complement");
  augment_cmd->add_option("--eps", aug_eps, "Push accuracy for ppr and hk");
  augment_cmd->add_option("--t", aug_t, "Heat kernel time");

  // detect-bench
  BenchFlags detect_flags;
  detect_flags.methods = {"hk,ppr,hks,pprs,movs,lemoneasy"};
  DetectOptions detect;
  std::string detect_method = "ppr-d";
  double detect_deg_est = 0.0;
  double detect_alpha = 0.99, detect_eps = 1e-4, detect_t = 4.0;
  auto* detect_cmd = app.add_subcommand("detect-bench", "Ground-truth recovery of detection algorithms");
  add_bench_flags(detect_cmd, detect_flags);
  detect_cmd->add_option("--methods", detect_flags.methods, "Comma-separated algorithms");
  add_extraction_flags(detect_cmd, detect.extraction, detect_method, detect_deg_est);
  detect_cmd->add_option("--diffusion-alpha", detect_alpha, "PageRank teleport complement for ppr/pprs");
  detect_cmd->add_option("--eps", detect_eps, "Push accuracy for ppr/pprs/hk/hks");
  detect_cmd->add_option("--t", detect_t, "Heat kernel time");
  detect_cmd->add_option("--gamma", detect.mov.gamma, "MOV shift (must stay below the second eigenvalue)");
  detect_cmd->add_option("--mov-tol", detect.mov.tolerance, "MOV solver tolerance");
  detect_cmd->add_option("--r", detect.rounds, "LEMONeasy rounds")->check(CLI::NonNegativeNumber);
  detect_cmd->add_option("--f", detect.augment_size, "LEMONeasy nodes added per round")
      ->check(CLI::PositiveNumber);
  detect_cmd->add_flag("--parent-sweep", detect.parent_sweep, "Sweep subgraph orders with full-graph volumes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, ee;
    const int code = app.exit(e, o, ee);
    out << o.str();
    err << ee.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*preprocess_cmd) {
      if (name.empty()) name = std::filesystem::path(out_dir).filename().string();
      const auto d = preprocess(edge_file, community_file, name, min_size);
      save_dataset(d, out_dir);
      out << stats_csv(dataset_stats(d), true);
      return kExitOk;
    }
    if (*stats_cmd) {
      const auto s = dataset_stats(load_dataset(stats_dataset));
      if (stats_format == "json") {
        out << stats_json(s) << '\n';
      } else if (stats_format == "csv") {
        out << stats_csv(s, true);
      } else {
        out << "dataset              " << s.name << '\n'
            << "nodes                " << s.nodes << '\n'
            << "edges                " << s.edges << '\n'
            << "communities          " << s.summary.count << '\n'
            << "mean size            " << s.summary.mean_size << '\n'
            << "mean internal degree " << s.summary.mean_internal_degree << '\n'
            << "mean internal ratio  " << s.summary.mean_internal_ratio << '\n'
            << "mean diameter        " << s.summary.mean_diameter << '\n';
      }
      return kExitOk;
    }
    if (*gen_cmd) {
      SyntheticDataset d;
      if (kind == "ring") {
        d = ring_of_cliques(count, size);
      } else if (kind == "path") {
        d = path_of_cliques(count, size, per_community == 0 ? count : per_community);
      } else if (kind == "two-cliques") {
        d = two_cliques(size);
      } else {
        d = planted_partition(blocks, size, p_in, p_out, gen_seed);
      }
      d.write(gen_out);
      out << "wrote " << d.num_nodes << " nodes, " << d.edges.size() << " edges, " << d.communities.size()
          << " communities to " << gen_out << '\n';
      return kExitOk;
    }
    if (*extract_cmd) {
      if (extract_cmd->count("--deg-est")) extract_base.degree_estimate = extract_deg_est;
      std::vector<BenchAlgorithm> algorithms;
      for (const auto& m : split_list(extract_flags.methods)) algorithms.push_back(extraction_algorithm(m, extract_base));
      return run_bench_command(extract_flags, algorithms, out, err);
    }
    if (*augment_cmd) {
      const auto ppr = DiffusionSpec::ppr(aug_alpha, aug_eps);
      const auto hk = DiffusionSpec::hk(aug_t, aug_eps);
      std::vector<BenchAlgorithm> algorithms;
      for (const auto& m : split_list(augment_flags.methods))
        algorithms.push_back(augmentation_algorithm(m, tau, ppr, hk));
      return run_bench_command(augment_flags, algorithms, out, err);
    }
    if (*detect_cmd) {
      if (detect_cmd->count("--deg-est")) detect.extraction.degree_estimate = detect_deg_est;
      detect.extraction = parse_extraction_method(detect_method, detect.extraction);
      detect.ppr = DiffusionSpec::ppr(detect_alpha, detect_eps);
      detect.hk = DiffusionSpec::hk(detect_t, detect_eps);
      detect.ppr.validate();
      detect.hk.validate();
      std::vector<BenchAlgorithm> algorithms;
      for (const auto& m : split_list(detect_flags.methods)) algorithms.push_back(detection_algorithm(m, detect));
      return run_bench_command(detect_flags, algorithms, out, err);
    }
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace lcd
