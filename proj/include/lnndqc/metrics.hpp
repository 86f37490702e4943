// Copyright 2026 The lnndqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment runner: builds benchmarks, routes them with the linear router,
// the SABRE baseline and the two-chip distributor, and reports one row per
// (size, router, strategy, seed).

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "lnndqc/benchgen.hpp"
#include "lnndqc/circuit.hpp"
#include "lnndqc/dqc.hpp"
#include "lnndqc/json_io.hpp"
#include "lnndqc/router_linear.hpp"
#include "lnndqc/router_sabre.hpp"
#include "lnndqc/topology.hpp"

namespace lnndqc {

enum class BenchmarkKind { Qft, Qaoa };

/// How QAOA problem graphs are drawn. `Complete` is Erdos-Renyi with p = 1.
enum class QaoaGraph { Ring, ThreeRegular, Complete, ErdosRenyi };

inline std::string to_string(QaoaGraph g) {
  switch (g) {
    case QaoaGraph::Ring: return "ring";
    case QaoaGraph::ThreeRegular: return "three_regular";
    case QaoaGraph::Complete: return "complete";
    case QaoaGraph::ErdosRenyi: return "erdos_renyi";
  }
  return "?";
}

inline QaoaGraph parse_qaoa_graph(const std::string& s) {
  if (s == "ring") return QaoaGraph::Ring;
  if (s == "three_regular") return QaoaGraph::ThreeRegular;
  if (s == "complete") return QaoaGraph::Complete;
  if (s == "erdos_renyi") return QaoaGraph::ErdosRenyi;
  throw std::invalid_argument("unknown qaoa graph family: " + s);
}

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::Qft;
  QaoaGraph graph = QaoaGraph::ThreeRegular;
  std::size_t layers = 1;
  double edge_prob = 0.5;  // ErdosRenyi only

  std::string name() const {
    if (kind == BenchmarkKind::Qft) return "qft";
    return "qaoa_" + to_string(graph) + "_p" + std::to_string(layers);
  }
};

/// Builds the benchmark circuit of width `n`. `seed` picks the QAOA graph
/// and angles; QFT ignores it.
inline Circuit make_benchmark(const BenchmarkSpec& b, std::size_t n, std::uint64_t seed) {
  if (b.kind == BenchmarkKind::Qft) return qft(n);
  ProblemGraph g;
  switch (b.graph) {
    case QaoaGraph::Ring: g = ring_graph(n); break;
    case QaoaGraph::ThreeRegular: g = three_regular_graph(n, seed); break;
    case QaoaGraph::Complete: g = erdos_renyi_graph(n, 1.0, seed); break;
    case QaoaGraph::ErdosRenyi: g = erdos_renyi_graph(n, b.edge_prob, seed); break;
  }
  return qaoa(g, b.layers, seed);
}

enum class RouterKind { Linear, Sabre };

struct DistributionConfig {
  TeleportMode mode = TeleportMode::Auto;
  std::vector<LinkKind> strategies{LinkKind::DanglingLink, LinkKind::RandomLink};
};

struct ExperimentConfig {
  BenchmarkSpec benchmark;
  std::vector<std::size_t> qubit_sizes{10, 20, 50};
  std::vector<RouterKind> routers{RouterKind::Linear, RouterKind::Sabre};
  /// Unset: the structural default of recommended_strategy().
  std::optional<RoutingStrategy> linear_strategy;
  RouterConfig sabre;
  std::optional<DistributionConfig> distribution;
  std::vector<std::uint64_t> seeds{0};
  SwapAccounting accounting = SwapAccounting::SwapAsOne;
  /// Heavy-hex distance per size; missing sizes use the smallest fitting d
  /// (per chip for distribution runs).
  std::map<std::size_t, std::size_t> heavy_hex_d;
  std::size_t workers = 1;
  std::string output = "out";

  void validate() const {
    if (qubit_sizes.empty()) throw std::invalid_argument("qubit_sizes is empty");
    for (auto n : qubit_sizes) {
      if (n == 0) throw std::invalid_argument("qubit sizes must be positive");
    }
    if (seeds.empty()) throw std::invalid_argument("seeds is empty");
    if (routers.empty() && !distribution) throw std::invalid_argument("nothing to run");
    if (benchmark.layers == 0) throw std::invalid_argument("qaoa layers must be positive");
    if (workers == 0) throw std::invalid_argument("workers must be positive");
    sabre.validate();
  }
};

inline ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  try {
    const auto bench = j.value("benchmark", std::string("qft"));
    if (bench == "qft") {
      cfg.benchmark.kind = BenchmarkKind::Qft;
    } else if (bench == "qaoa") {
      cfg.benchmark.kind = BenchmarkKind::Qaoa;
      if (j.contains("qaoa")) {
        const auto& q = j["qaoa"];
        cfg.benchmark.graph = parse_qaoa_graph(q.value("graph", std::string("three_regular")));
        cfg.benchmark.layers = q.value("p", std::size_t{1});
        cfg.benchmark.edge_prob = q.value("edge_prob", 0.5);
      }
    } else {
      throw std::invalid_argument("unknown benchmark: " + bench);
    }
    if (j.contains("qubit_sizes")) cfg.qubit_sizes = j["qubit_sizes"].get<std::vector<std::size_t>>();
    if (j.contains("routers")) {
      cfg.routers.clear();
      for (const auto& r : j["routers"]) {
        const auto s = r.get<std::string>();
        if (s == "linear") cfg.routers.push_back(RouterKind::Linear);
        else if (s == "sabre") cfg.routers.push_back(RouterKind::Sabre);
        else throw std::invalid_argument("unknown router: " + s);
      }
    }
    if (j.contains("linear_strategy") && j["linear_strategy"] != "auto") {
      cfg.linear_strategy = parse_strategy(j["linear_strategy"].get<std::string>());
    }
    if (j.contains("sabre")) {
      const auto& s = j["sabre"];
      cfg.sabre.lookahead_size = s.value("lookahead_size", cfg.sabre.lookahead_size);
      cfg.sabre.decay_delta = s.value("decay_delta", cfg.sabre.decay_delta);
      cfg.sabre.decay_reset = s.value("decay_reset", cfg.sabre.decay_reset);
      cfg.sabre.extended_weight = s.value("extended_weight", cfg.sabre.extended_weight);
      cfg.sabre.trials = s.value("trials", cfg.sabre.trials);
    }
    if (j.contains("distribution") && !j["distribution"].is_null()) {
      DistributionConfig d;
      const auto& dj = j["distribution"];
      d.mode = parse_teleport_mode(dj.value("mode", std::string("auto")));
      if (dj.contains("strategies")) {
        d.strategies.clear();
        for (const auto& s : dj["strategies"]) d.strategies.push_back(parse_link_kind(s.get<std::string>()));
      }
      cfg.distribution = d;
    }
    if (j.contains("seeds")) {
      cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    } else if (j.contains("repetitions")) {
      cfg.seeds.clear();
      const auto reps = j["repetitions"].get<std::uint64_t>();
      for (std::uint64_t s = 0; s < reps; ++s) cfg.seeds.push_back(s);
    }
    if (j.contains("accounting")) cfg.accounting = parse_accounting(j["accounting"].get<std::string>());
    if (j.contains("heavy_hex_d")) {
      for (const auto& [k, v] : j["heavy_hex_d"].items()) cfg.heavy_hex_d[std::stoul(k)] = v.get<std::size_t>();
    }
    cfg.workers = j.value("workers", cfg.workers);
    cfg.output = j.value("output", cfg.output);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

/// One result. Counters are zero and `error` is set when the job failed.
struct MetricsRow {
  std::string benchmark;
  std::size_t n = 0;
  std::size_t heavy_hex_d = 0;
  std::string router;
  std::string strategy;
  std::uint64_t seed = 0;
  std::size_t gate_count = 0;
  std::size_t depth = 0;
  std::size_t swap_count = 0;
  std::size_t cross_group_swaps = 0;
  std::size_t ebits = 0;
  std::string accounting;
  double wall_time_ms = 0;
  std::string error;

  bool operator==(const MetricsRow&) const = default;
};

inline const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> cols{
      "benchmark", "n",      "heavy_hex_d",       "router", "strategy",   "seed",         "gate_count",
      "depth",     "swap_count", "cross_group_swaps", "ebits",  "accounting", "wall_time_ms", "error"};
  return cols;
}

namespace detail {

struct Job {
  std::size_t n;
  std::string router;  // "linear", "sabre" or "dqc"
  std::optional<LinkKind> link;
  std::uint64_t seed;
};

inline std::size_t distance_for(const ExperimentConfig& cfg, std::size_t n, bool per_chip) {
  if (auto it = cfg.heavy_hex_d.find(n); it != cfg.heavy_hex_d.end()) return it->second;
  return heavy_hex_distance_for(per_chip ? (n + 1) / 2 : n);
}

inline MetricsRow run_job(const ExperimentConfig& cfg, const Job& job) {
  MetricsRow row;
  row.benchmark = cfg.benchmark.name();
  row.n = job.n;
  row.router = job.router;
  row.seed = job.seed;
  row.accounting = std::string(to_string(cfg.accounting));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto c = make_benchmark(cfg.benchmark, job.n, job.seed);
    const auto d = distance_for(cfg, job.n, job.router == "dqc");
    row.heavy_hex_d = d;
    const auto hh = heavy_hex(d);
    auto fill = [&](const Circuit& out) {
      row.gate_count = gate_count(out, cfg.accounting);
      row.depth = depth(out);
    };
    if (job.router == "linear") {
      const auto lnn = to_lnn(hh);
      const auto s = cfg.linear_strategy.value_or(recommended_strategy(c));
      const auto r = route_linear(c, lnn, s);
      if (!conformance_violations(r.circuit, lnn.graph).empty()) {
        throw std::logic_error("linear output uses a non-edge");
      }
      row.strategy = to_string(r.strategy);
      row.swap_count = r.swap_count;
      fill(r.circuit);
    } else if (job.router == "sabre") {
      auto rc = cfg.sabre;
      rc.seed = job.seed;
      const auto r = route_sabre(c, hh, rc);
      if (!conformance_violations(r.circuit, hh).empty()) {
        throw std::logic_error("sabre output uses a non-edge");
      }
      row.strategy = to_string(r.strategy);
      row.swap_count = r.swap_count;
      fill(r.circuit);
    } else {
      const auto lnn = to_lnn(hh);
      row.strategy = to_string(*job.link);
      const auto r = distribute(c, lnn, cfg.distribution->mode, *job.link, job.seed);
      if (!distributed_violations(r).empty()) {
        throw std::logic_error("distributed output uses a non-edge");
      }
      row.router = "dqc_" + to_string(r.mode);
      row.swap_count = r.swap_count;
      row.cross_group_swaps = r.cross_group_swaps;
      row.ebits = r.ebits_consumed;
      fill(r.circuit);
    }
  } catch (const std::exception& e) {
    row.gate_count = row.depth = row.swap_count = row.cross_group_swaps = row.ebits = 0;
    if (job.router == "dqc" && row.strategy.empty()) row.strategy = to_string(*job.link);
    if (job.router == "dqc") row.router = "dqc_" + to_string(cfg.distribution->mode);
    row.error = e.what();
  }
  row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace detail

/// Runs every job of `cfg`, `cfg.workers` at a time. Row order is the job
/// order (size, then router, then seed), independent of scheduling.
inline std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<detail::Job> jobs;
  for (auto n : cfg.qubit_sizes) {
    for (auto r : cfg.routers) {
      for (auto s : cfg.seeds) jobs.push_back({n, r == RouterKind::Linear ? "linear" : "sabre", {}, s});
    }
    if (cfg.distribution) {
      for (auto k : cfg.distribution->strategies) {
        for (auto s : cfg.seeds) jobs.push_back({n, "dqc", k, s});
      }
    }
  }
  std::vector<MetricsRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < jobs.size(); i = next++) rows[i] = detail::run_job(cfg, jobs[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(cfg.workers, jobs.size()); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

// ---- reports ----

inline json to_json(const MetricsRow& r) {
  return json{{"benchmark", r.benchmark},
              {"n", r.n},
              {"heavy_hex_d", r.heavy_hex_d},
              {"router", r.router},
              {"strategy", r.strategy},
              {"seed", r.seed},
              {"gate_count", r.gate_count},
              {"depth", r.depth},
              {"swap_count", r.swap_count},
              {"cross_group_swaps", r.cross_group_swaps},
              {"ebits", r.ebits},
              {"accounting", r.accounting},
              {"wall_time_ms", r.wall_time_ms},
              {"error", r.error}};
}

inline MetricsRow metrics_row_from_json(const json& j) {
  try {
    MetricsRow r;
    r.benchmark = j.at("benchmark").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.heavy_hex_d = j.at("heavy_hex_d").get<std::size_t>();
    r.router = j.at("router").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.gate_count = j.at("gate_count").get<std::size_t>();
    r.depth = j.at("depth").get<std::size_t>();
    r.swap_count = j.at("swap_count").get<std::size_t>();
    r.cross_group_swaps = j.at("cross_group_swaps").get<std::size_t>();
    r.ebits = j.at("ebits").get<std::size_t>();
    r.accounting = j.at("accounting").get<std::string>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    r.error = j.at("error").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad metrics row: ") + e.what());
  }
}

inline std::string rows_to_json(const std::vector<MetricsRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a.dump(2) + "\n";
}

inline std::vector<MetricsRow> rows_from_json(const std::string& text) {
  json a;
  try {
    a = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad metrics JSON: ") + e.what());
  }
  if (!a.is_array()) throw std::invalid_argument("metrics JSON must be an array of rows");
  std::vector<MetricsRow> rows;
  for (const auto& j : a) rows.push_back(metrics_row_from_json(j));
  return rows;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string format_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ms;
  return os.str();
}

}  // namespace detail

/// CSV with a header line. Without `wall_time` the wall_time_ms column is
/// dropped, which makes the output byte-stable across runs.
inline std::string rows_to_csv(const std::vector<MetricsRow>& rows, bool wall_time = true) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : metrics_columns()) {
    if (!wall_time && c == "wall_time_ms") continue;
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << "\n";
  for (const auto& r : rows) {
    os << detail::csv_field(r.benchmark) << ',' << r.n << ',' << r.heavy_hex_d << ','
       << detail::csv_field(r.router) << ',' << detail::csv_field(r.strategy) << ',' << r.seed << ','
       << r.gate_count << ',' << r.depth << ',' << r.swap_count << ',' << r.cross_group_swaps << ','
       << r.ebits << ',' << detail::csv_field(r.accounting) << ',';
    if (wall_time) os << detail::format_ms(r.wall_time_ms) << ',';
    os << detail::csv_field(r.error) << "\n";
  }
  return os.str();
}

/// Mean and range of one counter over seeds.
struct SeedStats {
  double mean = 0;
  std::size_t min = 0, max = 0, count = 0;
};

namespace detail {

inline std::string format_stats(const SeedStats& s) {
  if (s.count == 0) return "-";
  std::ostringstream os;
  if (s.min == s.max) {
    os << s.min;
  } else {
    os << std::fixed << std::setprecision(1) << s.mean << " [" << s.min << ", " << s.max << "]";
  }
  return os.str();
}

inline void add_sample(SeedStats& s, std::size_t v) {
  s.min = s.count == 0 ? v : std::min(s.min, v);
  s.max = s.count == 0 ? v : std::max(s.max, v);
  s.mean = (s.mean * static_cast<double>(s.count) + static_cast<double>(v)) / static_cast<double>(s.count + 1);
  ++s.count;
}

}  // namespace detail

/// Markdown: one table per benchmark, one line per size, and per
/// router/strategy the gate count and depth (mean [min, max] over seeds).
/// Distribution columns add cross-group SWAPs and e-bits. Failed rows are
/// listed below the tables.
inline std::string rows_to_markdown(const std::vector<MetricsRow>& rows) {
  std::vector<std::string> benches;
  std::map<std::string, std::vector<std::string>> groups;  // benchmark -> router/strategy labels
  std::map<std::tuple<std::string, std::size_t, std::string>, std::array<SeedStats, 5>> stats;
  std::map<std::string, std::vector<std::size_t>> sizes;
  std::vector<const MetricsRow*> failed;
  for (const auto& r : rows) {
    if (std::find(benches.begin(), benches.end(), r.benchmark) == benches.end()) benches.push_back(r.benchmark);
    if (!r.error.empty()) {
      failed.push_back(&r);
      continue;
    }
    const auto label = r.router + ":" + r.strategy;
    auto& g = groups[r.benchmark];
    if (std::find(g.begin(), g.end(), label) == g.end()) g.push_back(label);
    auto& sz = sizes[r.benchmark];
    if (std::find(sz.begin(), sz.end(), r.n) == sz.end()) sz.push_back(r.n);
    auto& st = stats[{r.benchmark, r.n, label}];
    detail::add_sample(st[0], r.gate_count);
    detail::add_sample(st[1], r.depth);
    detail::add_sample(st[2], r.swap_count);
    detail::add_sample(st[3], r.cross_group_swaps);
    detail::add_sample(st[4], r.ebits);
  }
  std::ostringstream os;
  const auto accounting = rows.empty() ? std::string() : rows.front().accounting;
  for (const auto& b : benches) {
    if (!groups.count(b)) continue;
    os << "### " << b << " (" << accounting << ")\n\n| n |";
    std::string rule = "|---|";
    for (const auto& g : groups[b]) {
      os << ' ' << g << " gates | " << g << " depth |";
      rule += "---|---|";
      if (g.rfind("dqc", 0) == 0) {
        os << ' ' << g << " cross-group SWAPs | " << g << " e-bits |";
        rule += "---|---|";
      }
    }
    os << "\n" << rule << "\n";
    auto sz = sizes[b];
    std::sort(sz.begin(), sz.end());
    for (auto n : sz) {
      os << "| " << n << " |";
      for (const auto& g : groups[b]) {
        const auto it = stats.find({b, n, g});
        const std::array<SeedStats, 5> empty{};
        const auto& st = it == stats.end() ? empty : it->second;
        os << ' ' << detail::format_stats(st[0]) << " | " << detail::format_stats(st[1]) << " |";
        if (g.rfind("dqc", 0) == 0) {
          os << ' ' << detail::format_stats(st[3]) << " | " << detail::format_stats(st[4]) << " |";
        }
      }
      os << "\n";
    }
    os << "\n";
  }
  if (!failed.empty()) {
    os << "### Failed rows\n\n";
    for (const auto* r : failed) {
      os << "- " << r->benchmark << " n=" << r->n << " " << r->router << ":" << r->strategy << " seed "
         << r->seed << ": " << r->error << "\n";
    }
  }
  return os.str();
}

enum class ReportFormat { Csv, Json, Markdown };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "md" || s == "markdown") return ReportFormat::Markdown;
  throw std::invalid_argument("unknown report format: " + s);
}

inline std::string render_report(const std::vector<MetricsRow>& rows, ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return rows_to_csv(rows);
    case ReportFormat::Json: return rows_to_json(rows);
    case ReportFormat::Markdown: return rows_to_markdown(rows);
  }
  return {};
}

/// Writes `rows` to `path` in format `f`.
inline void emit_report(const std::vector<MetricsRow>& rows, ReportFormat f, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("no rows to report");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render_report(rows, f);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lnndqc
