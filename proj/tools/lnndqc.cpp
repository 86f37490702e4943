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

// lnndqc command-line tool.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "lnndqc/benchgen.hpp"
#include "lnndqc/dqc.hpp"
#include "lnndqc/json_io.hpp"
#include "lnndqc/metrics.hpp"
#include "lnndqc/qasm.hpp"
#include "lnndqc/router_linear.hpp"
#include "lnndqc/router_sabre.hpp"
#include "lnndqc/sim.hpp"
#include "lnndqc/topology.hpp"

namespace fs = std::filesystem;
using namespace lnndqc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

/// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string sidecar_path(const std::string& qasm_path) {
  return fs::path(qasm_path).replace_extension(".json").string();
}

std::size_t distance_arg(std::size_t d, std::size_t qubits) {
  return d != 0 ? d : heavy_hex_distance_for(qubits);
}

void print_metrics(const Circuit& c, std::size_t swaps, SwapAccounting acc, std::ostream& os) {
  os << "gate_count=" << gate_count(c, acc) << " depth=" << depth(c) << " swaps=" << swaps
     << " accounting=" << to_string(acc) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heavy-hex to LNN compilation, routing and two-chip distribution"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out;
  std::string accounting = "swap_as_one";
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out, "Output file or directory (default: stdout)");
  app.add_option("--accounting", accounting, "swap_as_one | swap_as_three_cx")->capture_default_str();

  // gen-bench
  auto* gen = app.add_subcommand("gen-bench", "Generate a QFT or QAOA circuit as QASM");
  std::string kind = "qft", graph = "three_regular", edges_in;
  std::size_t n = 0, layers = 1;
  double edge_prob = 0.5;
  gen->add_option("kind", kind, "qft | qaoa")->required();
  gen->add_option("-n,--qubits", n, "Number of qubits");
  gen->add_option("--graph", graph, "QAOA graph: ring | three_regular | complete | erdos_renyi");
  gen->add_option("--p", layers, "QAOA layers");
  gen->add_option("--edge-prob", edge_prob, "Edge probability for erdos_renyi");
  gen->add_option("--edges", edges_in, "QAOA problem graph as an edge list file");

  // topo
  auto* topo = app.add_subcommand("topo", "Build a heavy-hex graph, its LNN reduction or a two-chip system");
  std::size_t d = 3;
  std::string link;
  bool ascii = false;
  topo->add_option("-d,--distance", d, "Heavy-hex distance (odd, >= 3)")->capture_default_str();
  auto* lnn_flag = topo->add_flag("--lnn", "Reduce to an LNN line with dangling qubits");
  topo->add_option("--link", link, "Join two LNN chips: dangling | random");
  topo->add_flag("--ascii", ascii, "Print a text rendering of the LNN line");

  // compile
  auto* comp = app.add_subcommand("compile", "Route a QASM circuit onto a heavy-hex device");
  std::string in, router = "linear", strategy = "auto", topo_in;
  std::size_t cd = 0;
  comp->add_option("input", in, "Logical QASM file")->required();
  comp->add_option("--router", router, "linear | sabre")->capture_default_str();
  comp->add_option("--strategy", strategy, "Linear router: auto | greedy | swap_network")->capture_default_str();
  comp->add_option("-d,--distance", cd, "Heavy-hex distance (default: smallest that fits)");
  comp->add_option("--topology", topo_in, "Topology JSON (LNN for linear, graph for sabre)");

  // distribute
  auto* dist = app.add_subcommand("distribute", "Distribute a QASM circuit over two linked LNN chips");
  std::string din, mode = "auto", dlink = "dangling";
  std::size_t dd = 0;
  dist->add_option("input", din, "Logical QASM file")->required();
  dist->add_option("--mode", mode, "state | gate | gate_batched | auto")->capture_default_str();
  dist->add_option("--link", dlink, "dangling | random")->capture_default_str();
  dist->add_option("-d,--distance", dd, "Per-chip heavy-hex distance (default: smallest that fits)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check a routed or distributed circuit against its source");
  std::string vlogical, vphysical, vsidecar;
  double tol = 1e-9;
  ver->add_option("logical", vlogical, "Logical QASM")->required();
  ver->add_option("physical", vphysical, "Routed QASM (its .json sidecar is read too)")->required();
  ver->add_option("--sidecar", vsidecar, "Sidecar JSON (default: next to the routed QASM)");
  ver->add_option("--tol", tol, "Amplitude tolerance")->capture_default_str();

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment config and write metrics");
  std::string config;
  exp->add_option("config", config, "Experiment config JSON")->required();

  // report
  auto* rep = app.add_subcommand("report", "Render metrics JSON as CSV, JSON or Markdown");
  std::string rin, format = "md";
  rep->add_option("input", rin, "metrics.json from `experiment`")->required();
  rep->add_option("--format", format, "csv | json | md")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto acc = parse_accounting(accounting);

    if (*gen) {
      Circuit c;
      if (kind == "qft") {
        if (n == 0) throw std::invalid_argument("qft needs --qubits");
        c = qft(n);
      } else if (kind == "qaoa") {
        if (!edges_in.empty()) {
          std::ifstream e(edges_in);
          if (!e) throw std::runtime_error("cannot read " + edges_in);
          c = qaoa(read_edge_list(e), layers, seed);
        } else {
          if (n == 0) throw std::invalid_argument("qaoa needs --qubits or --edges");
          BenchmarkSpec b{BenchmarkKind::Qaoa, parse_qaoa_graph(graph), layers, edge_prob};
          c = make_benchmark(b, n, seed);
        }
      } else {
        throw std::invalid_argument("unknown benchmark kind: " + kind);
      }
      emit(out, emit_qasm(c));
      return 0;
    }

    if (*topo) {
      const auto hh = heavy_hex(d);
      if (link.empty() && !*lnn_flag && !ascii) {
        emit(out, to_json(hh).dump(2) + "\n");
        return 0;
      }
      const auto lnn = to_lnn(hh);
      if (ascii) {
        std::cout << render_ascii(lnn);
        if (out.empty()) return 0;
      }
      if (!link.empty()) {
        emit(out, to_json(link_chips(lnn, lnn, parse_link_kind(link), seed)).dump(2) + "\n");
      } else {
        emit(out, to_json(lnn).dump(2) + "\n");
      }
      return 0;
    }

    if (*comp) {
      const auto c = parse_qasm(read_file(in));
      CompiledCircuit r;
      if (router == "linear") {
        const auto lnn = topo_in.empty() ? to_lnn(heavy_hex(distance_arg(cd, c.num_qubits())))
                                         : lnn_from_json(json::parse(read_file(topo_in)));
        const auto s = strategy == "auto" ? recommended_strategy(c) : parse_strategy(strategy);
        r = route_linear(c, lnn, s);
        if (!conformance_violations(r.circuit, lnn.graph).empty()) {
          throw std::logic_error("routed circuit violates the coupling graph");
        }
      } else if (router == "sabre") {
        const auto g = topo_in.empty() ? heavy_hex(distance_arg(cd, c.num_qubits()))
                                       : coupling_from_json(json::parse(read_file(topo_in)));
        RouterConfig rc;
        rc.seed = seed;
        r = route_sabre(c, g, rc);
        if (!conformance_violations(r.circuit, g).empty()) {
          throw std::logic_error("routed circuit violates the coupling graph");
        }
      } else {
        throw std::invalid_argument("unknown router: " + router);
      }
      if (out.empty()) {
        std::cout << emit_qasm(r.circuit);
      } else {
        write_file(out, emit_qasm(r.circuit));
        write_file(sidecar_path(out), to_json(r).dump(2) + "\n");
      }
      print_metrics(r.circuit, r.swap_count, acc, std::cerr);
      return 0;
    }

    if (*dist) {
      const auto c = parse_qasm(read_file(din));
      const auto chip = to_lnn(heavy_hex(distance_arg(dd, (c.num_qubits() + 1) / 2)));
      const auto r = distribute(c, chip, parse_teleport_mode(mode), parse_link_kind(dlink), seed);
      if (!distributed_violations(r).empty()) {
        throw std::logic_error("distributed circuit violates the two-chip coupling");
      }
      if (out.empty()) {
        std::cout << emit_qasm(r.circuit);
      } else {
        write_file(out, emit_qasm(r.circuit));
        write_file(sidecar_path(out), to_json(r).dump(2) + "\n");
      }
      print_metrics(r.circuit, r.swap_count, acc, std::cerr);
      std::cerr << "cross_group_swaps=" << r.cross_group_swaps << " ebits=" << r.ebits_consumed << "\n";
      return 0;
    }

    if (*ver) {
      const auto logical = parse_qasm(read_file(vlogical));
      const auto physical = parse_qasm(read_file(vphysical));
      const auto side = json::parse(read_file(vsidecar.empty() ? sidecar_path(vphysical) : vsidecar));
      const auto initial = side.at("initial_layout").get<std::vector<std::size_t>>();
      const auto final_pos = side.at("final_layout").get<std::vector<std::size_t>>();
      const auto rep_eq = routed_equivalent(logical, physical, initial, final_pos, tol);
      std::cout << (rep_eq.equivalent ? "equivalent" : "NOT equivalent")
                << " max_deviation=" << rep_eq.max_deviation << " branches=" << rep_eq.branches_checked
                << "\n";
      return rep_eq.equivalent ? 0 : 1;
    }

    if (*exp) {
      auto j = json::parse(read_file(config));
      if (app.get_option("--accounting")->count() > 0) j["accounting"] = accounting;
      if (app.get_option("--seed")->count() > 0) j["seeds"] = {seed};
      auto cfg = experiment_config_from_json(j);
      if (!out.empty()) cfg.output = out;
      const auto rows = run_experiment(cfg);
      fs::create_directories(cfg.output);
      const auto dir = fs::path(cfg.output);
      emit_report(rows, ReportFormat::Csv, (dir / "metrics.csv").string());
      emit_report(rows, ReportFormat::Json, (dir / "metrics.json").string());
      emit_report(rows, ReportFormat::Markdown, (dir / "metrics.md").string());
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
      std::cerr << rows.size() << " rows (" << failed << " failed) written to " << cfg.output << "\n";
      return failed == 0 ? 0 : 2;
    }

    if (*rep) {
      const auto rows = rows_from_json(read_file(rin));
      if (rows.empty()) throw std::invalid_argument("no rows in " + rin);
      emit(out, render_report(rows, parse_report_format(format)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
