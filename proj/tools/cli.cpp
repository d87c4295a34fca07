#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "polarimeter/community.hpp"
#include "polarimeter/datasets.hpp"
#include "polarimeter/errors.hpp"
#include "polarimeter/io.hpp"
#include "polarimeter/metric.hpp"
#include "polarimeter/report.hpp"
#include "polarimeter/stance.hpp"
#include "polarimeter/synthetic.hpp"

namespace polarimeter::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct Common {
  std::size_t runs = 100;
  std::uint64_t seed = kDefaultSeed;
  std::size_t threads = 0;  // 0: POLARIMETER_THREADS, else hardware concurrency
  std::string out;
  std::string format = "json";
};

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("POLARIMETER_THREADS")) {
    std::size_t n = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0) {
      throw InputError("POLARIMETER_THREADS must be a positive integer, got '" + std::string(s) + "'");
    }
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Writes through `fn` to --out, or to `out` when --out is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  fn(file);
  if (!file) throw InputError("write failed: " + path);
}

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InputError(std::string(what) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(delim, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

// "a:b:step", "a:b" (step 1) or "a,b,c".
std::vector<double> parse_grid(std::string_view spec, std::string_view what) {
  std::vector<double> values;
  if (spec.find(':') != std::string_view::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() < 2 || parts.size() > 3) throw InputError(std::string(what) + ": expected start:stop[:step]");
    const double start = parse_real(parts[0], what);
    const double stop = parse_real(parts[1], what);
    const double step = parts.size() == 3 ? parse_real(parts[2], what) : 1.0;
    if (!(step > 0.0) || stop < start) throw InputError(std::string(what) + ": empty or invalid range");
    for (std::size_t i = 0;; ++i) {
      // Round to 1e-9 so 0.3 + 4 * 0.1 prints and keys as 0.7.
      const double v = std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9;
      if (v > stop + 1e-9) break;
      values.push_back(v);
    }
  } else {
    for (auto part : split(spec, ',')) values.push_back(parse_real(part, what));
  }
  if (values.empty()) throw InputError(std::string(what) + ": no values");
  return values;
}

std::vector<std::uint32_t> parse_opinion_grid(std::string_view spec) {
  std::vector<std::uint32_t> out;
  for (double v : parse_grid(spec, "--num-opinions")) {
    if (v < 2.0 || v != std::floor(v)) throw InputError("--num-opinions: values must be integers >= 2");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

SbmConfig parse_sbm(std::string_view spec) {
  const auto x = spec.find('x');
  if (x == std::string_view::npos) throw InputError("--sbm: expected BLOCKSxNODES, e.g. 20x250");
  SbmConfig cfg;
  const auto parse_count = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
      throw InputError("--sbm: '" + std::string(spec) + "' is not BLOCKSxNODES with positive counts");
    }
    return v;
  };
  cfg.blocks = parse_count(spec.substr(0, x));
  cfg.nodes_per_block = parse_count(spec.substr(x + 1));
  return cfg;
}

void add_common(CLI::App* cmd, Common& c, bool with_format) {
  cmd->add_option("--runs", c.runs, "Louvain runs averaged per score")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Master seed; run r uses seed + r");
  cmd->add_option("--threads", c.threads,
                  "Worker threads (0: $POLARIMETER_THREADS, else all cores); output does not depend on it");
  cmd->add_option("--out", c.out, "Output file ('-' or empty: stdout)");
  if (with_format) {
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  }
}

void print_run_summary(const PolarizationReport& report, std::ostream& err) {
  const Summary p = report.polarization();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "polarization mean %.6f std %.6f over %zu runs (%zu nodes, %zu edges)\n", p.mean,
                p.std, report.runs.size(), report.nodes, report.edges);
  err << buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-opinion polarization scores for labeled networks", "polarimeter"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  // analyze
  Common an;
  std::string graph_path, labels_path, partition_out;
  double resolution = 1.0;
  auto* analyze_cmd = app.add_subcommand("analyze", "Score a labeled graph averaged over Louvain runs");
  analyze_cmd->add_option("--graph", graph_path, "Edge list: u<TAB|,>v[<TAB|,>w]")->required();
  analyze_cmd->add_option("--labels", labels_path, "Labels: u<TAB|,>opinion_index")->required();
  analyze_cmd->add_option("--resolution", resolution, "Modularity resolution")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--partition-out", partition_out, "Write the first run's partition as node<TAB>community");
  add_common(analyze_cmd, an, true);

  // sweep
  Common sw;
  std::string sweep_graph, sbm_spec, dom_spec = "0.3:1.0:0.1", opinions_spec = "2:10", expected_path;
  double p_in = 0.05, p_out = 0.001;
  auto* sweep_cmd = app.add_subcommand("sweep", "Mean score over a grid of synthetic labelings");
  auto* sweep_graph_opt = sweep_cmd->add_option("--graph", sweep_graph, "Edge list to relabel");
  auto* sbm_opt = sweep_cmd->add_option("--sbm", sbm_spec, "Generate an SBM surrogate, BLOCKSxNODES (e.g. 20x250)");
  sweep_graph_opt->excludes(sbm_opt);
  sweep_cmd->add_option("--p-in", p_in, "SBM within-block edge probability");
  sweep_cmd->add_option("--p-out", p_out, "SBM cross-block edge probability");
  sweep_cmd->add_option("--dom-ratios", dom_spec, "Dominance ratios: start:stop:step or a,b,c");
  sweep_cmd->add_option("--num-opinions", opinions_spec, "Opinion counts: start:stop or a,b,c");
  sweep_cmd->add_option("--expected", expected_path,
                        "CSV num_opinions,dom_ratio,mean_p to report per-cell deviation against");
  add_common(sweep_cmd, sw, false);

  // build-network
  std::string records_path, prefix;
  std::size_t build_runs = 0;
  std::uint64_t build_seed = kDefaultSeed;
  std::size_t build_threads = 0;
  auto* build_cmd = app.add_subcommand("build-network", "Build a tri-opinion retweet network from stance records");
  build_cmd->add_option("--records", records_path, "JSON-lines stance records")->required();
  build_cmd->add_option("--out", prefix, "Output prefix for .edges.tsv/.labels.tsv/.opinions.tsv")->required();
  build_cmd->add_option("--runs", build_runs, "If > 0, also score the network and write <prefix>.report.json");
  build_cmd->add_option("--seed", build_seed, "Master seed for scoring");
  build_cmd->add_option("--threads", build_threads, "Worker threads for scoring");

  // demo-karate
  Common demo;
  auto* demo_cmd = app.add_subcommand("demo-karate", "Score the bundled karate club with its two factions");
  add_common(demo_cmd, demo, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*analyze_cmd) {
      const LoadedGraph loaded = load_graph(graph_path, labels_path);
      if (loaded.self_loops_dropped > 0) {
        err << "warning: " << graph_path << ": dropped " << loaded.self_loops_dropped << " self-loop rows\n";
      }
      LouvainConfig cfg;
      cfg.seed = an.seed;
      cfg.resolution = resolution;
      const PolarizationReport report = analyze(loaded.graph, cfg, an.runs, resolve_threads(an.threads));
      emit(an.out, out, [&](std::ostream& o) { save_report(report, o, parse_report_format(an.format)); });
      if (!partition_out.empty()) {
        const Partition p = louvain(loaded.graph, cfg);
        emit(partition_out, out, [&](std::ostream& o) { save_partition(loaded.graph, p, o); });
      }
      print_run_summary(report, err);
    } else if (*sweep_cmd) {
      if (sweep_graph.empty() && sbm_spec.empty()) throw InputError("sweep: give --graph or --sbm");
      const SweepGrid grid{parse_opinion_grid(opinions_spec), parse_grid(dom_spec, "--dom-ratios")};
      for (double d : grid.dom_ratios) {
        if (!(d > 0.0 && d <= 1.0)) throw InputError("--dom-ratios: values must be in (0, 1]");
      }

      LabeledGraph graph;
      Partition labeling;
      if (!sbm_spec.empty()) {
        SbmConfig cfg = parse_sbm(sbm_spec);
        cfg.p_in = p_in;
        cfg.p_out = p_out;
        cfg.seed = sw.seed;
        PlantedGraph planted = generate_sbm(cfg);
        graph = std::move(planted.graph);
        labeling = std::move(planted.blocks);
      } else {
        graph = load_edge_list(sweep_graph).graph;
        LouvainConfig cfg;
        cfg.seed = sw.seed;
        labeling = louvain(graph, cfg);
      }

      const auto cells = sweep(graph, labeling, grid, sw.runs, sw.seed, resolve_threads(sw.threads));
      emit(sw.out, out, [&](std::ostream& o) { save_sweep_csv(cells, o); });

      char buf[160];
      for (std::uint32_t k : grid.num_opinions) {
        std::vector<double> x, y;
        for (const SweepCell& c : cells) {
          if (c.num_opinions != k) continue;
          x.push_back(c.dom_ratio);
          y.push_back(c.mean_p);
        }
        std::snprintf(buf, sizeof(buf), "num_opinions=%u spearman(dom_ratio, mean_p)=%.4f\n", k, spearman(x, y));
        err << buf;
      }

      if (!expected_path.empty()) {
        std::ifstream in(expected_path);
        if (!in) throw InputError("cannot open " + expected_path);
        const auto expected = read_sweep_reference(in, expected_path);
        std::size_t compared = 0, within = 0;
        double worst = 0.0;
        for (const SweepCell& c : cells) {
          auto it = expected.find({c.num_opinions, std::lround(c.dom_ratio * 1000.0)});
          if (it == expected.end()) continue;
          const double dev = std::fabs(c.mean_p - it->second);
          ++compared;
          if (dev <= 0.10) ++within;
          worst = std::max(worst, dev);
          std::snprintf(buf, sizeof(buf), "deviation num_opinions=%u dom_ratio=%.2f got=%.4f expected=%.4f |d|=%.4f\n",
                        c.num_opinions, c.dom_ratio, c.mean_p, it->second, dev);
          err << buf;
        }
        std::snprintf(buf, sizeof(buf), "%zu/%zu cells within 0.10 of expected (max |d| = %.4f)\n", within,
                      compared, worst);
        err << buf;
      }
    } else if (*build_cmd) {
      const StanceRecordSet records = read_stance_records(std::filesystem::path(records_path));
      const RetweetNetwork net = build_retweet_network(records);
      write_network(net, prefix);
      err << "records " << records.records.size() << ", users " << net.graph.node_count() << ", edges "
          << net.graph.edge_count() << ", retweet events " << net.retweet_events << "\n";
      if (net.self_retweets_dropped > 0) {
        err << "warning: dropped " << net.self_retweets_dropped << " self-retweet events\n";
      }
      if (net.empty_retweeters_skipped > 0) {
        err << "warning: skipped " << net.empty_retweeters_skipped << " empty retweeter ids\n";
      }
      if (net.scores.no_items > 0) {
        err << "warning: " << net.scores.no_items << " users had no stance items and were labeled neutral\n";
      }
      if (build_runs > 0) {
        LouvainConfig cfg;
        cfg.seed = build_seed;
        const PolarizationReport report = analyze(net.graph, cfg, build_runs, resolve_threads(build_threads));
        save_report(report, std::filesystem::path(prefix + ".report.json"), ReportFormat::json);
        print_run_summary(report, err);
      }
    } else if (*demo_cmd) {
      LouvainConfig cfg;
      cfg.seed = demo.seed;
      const PolarizationReport report = analyze(karate_club(), cfg, demo.runs, resolve_threads(demo.threads));
      emit(demo.out, out, [&](std::ostream& o) { save_report(report, o, parse_report_format(demo.format)); });
      print_run_summary(report, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace polarimeter::cli
