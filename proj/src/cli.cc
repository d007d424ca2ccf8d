// Copyright 2026 The Edgepair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgepair/cli.h"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "edgepair/metrics.h"
#include "edgepair/simulator.h"
#include "edgepair/workload.h"

namespace edgepair {
namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string topology_path;
  std::string workload_path;
  uint64_t seed = 0;
  std::optional<uint64_t> baseline_seed;
  std::optional<uint64_t> enhanced_seed;
  std::string out_path = "-";
  std::string format = "json";
  std::string offload = "non_critical_only";
  std::string trace_path;
  std::string dump_stores_path;
  bool baseline_only = false;

  // Workload generation flags.
  std::string preset;
  std::optional<double> duration_s;
  std::optional<double> rate;
  std::optional<double> interarrival_ms;
  std::optional<double> critical_fraction;
  std::string service;
  std::optional<int64_t> payload_bits;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(std::string("cannot read ") + what + " file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path, const char* what) {
  const std::string text = read_file(path, what);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed JSON in ") + what + " file " + path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SpecError("cannot write output file: " + path);
  f << content;
  if (!f) throw SpecError("failed writing output file: " + path);
}

PolicyConfig load_config(const Options& o) {
  if (o.config_path.empty()) return validate_config(json::object());
  const json raw = read_json(o.config_path, "config");
  try {
    return validate_config(raw);
  } catch (const ConfigError& e) {
    throw ConfigError(o.config_path + ": " + e.what());
  }
}

Topology load_topology(const Options& o) {
  if (o.topology_path.empty()) return Topology{};
  return topology_from_json(read_json(o.topology_path, "topology"));
}

SimTime flag_ms(double ms, const char* flag) {
  try {
    return ms_to_simtime(ms);
  } catch (const std::exception& e) {
    throw SpecError(std::string(flag) + ": " + e.what());
  }
}

WorkloadSpec workload_spec(const Options& o) {
  const SimTime duration = flag_ms(o.duration_s.value_or(10.0) * 1000.0, "--duration-s");
  WorkloadSpec spec;
  if (!o.preset.empty()) {
    spec = preset_workload(o.preset, duration);
  } else {
    spec.duration = duration;
    spec.arrival = PoissonArrivals{100.0};
    spec.critical_fraction = 0.2;
    spec.service_demand = Deterministic{SimTime::FromMillis(10)};
    spec.payload = {8000, 8000};
  }
  if (o.rate && o.interarrival_ms) {
    throw SpecError("--rate and --interarrival-ms are mutually exclusive");
  }
  if (o.rate) spec.arrival = PoissonArrivals{*o.rate};
  if (o.interarrival_ms) spec.arrival = FixedArrivals{flag_ms(*o.interarrival_ms, "--interarrival-ms")};
  if (o.critical_fraction) spec.critical_fraction = *o.critical_fraction;
  if (!o.service.empty()) spec.service_demand = parse_distribution(o.service);
  if (o.payload_bits) spec.payload = {*o.payload_bits, *o.payload_bits};
  validate(spec);
  return spec;
}

struct LoadedWorkload {
  std::vector<Request> requests;
  json description;
};

LoadedWorkload load_workload(const Options& o, uint64_t seed) {
  if (!o.workload_path.empty()) {
    std::istringstream in(read_file(o.workload_path, "workload"));
    try {
      LoadedWorkload w{read_workload_csv(in), {}};
      w.description = {{"source", o.workload_path}, {"requests", w.requests.size()}};
      return w;
    } catch (const SpecError& e) {
      throw SpecError(o.workload_path + ": " + e.what());
    }
  }
  const WorkloadSpec spec = workload_spec(o);
  LoadedWorkload w{generate_workload(spec, seed), {}};
  w.description = {{"source", "generated"}, {"spec", to_json(spec)},
                   {"requests", w.requests.size()}};
  return w;
}

OffloadPolicy offload_policy(const Options& o) {
  auto p = parse_offload_policy(o.offload);
  if (!p) throw SpecError("--offload must be all, non_critical_only or none");
  return *p;
}

struct Variant {
  RunResult result;
  MetricsReport report;
};

Variant simulate(bool dual, const PolicyConfig& config, const Topology& topology,
                 const std::vector<Request>& requests, uint64_t seed, OffloadPolicy offload) {
  Variant v;
  v.result = dual ? run(config, topology, requests, seed)
                  : run_baseline(config, topology, requests, seed);
  check_run_invariants(v.result, requests);
  cloud_offload_accounting(v.result.outcomes, offload);
  v.report = summarize(v.result.outcomes, config, v.result.scenario_timeline, v.result.end_time);
  return v;
}

json header(const char* command, uint64_t seed, const PolicyConfig& config,
            const Topology& topology, const json& workload, OffloadPolicy offload) {
  return {{"tool", "edgepair"},
          {"command", command},
          {"seed", seed},
          {"config", to_json(config)},
          {"topology", to_json(topology)},
          {"workload", workload},
          {"offload_policy", to_string(offload)}};
}

std::string csv_with_header(const json& h, const std::string& body) {
  std::ostringstream out;
  for (const auto& [key, value] : h.items()) out << "# " << key << '=' << value.dump() << '\n';
  out << body;
  return out.str();
}

void write_side_outputs(const Options& o, const json& h, const RunResult& r, std::ostream& out) {
  if (!o.trace_path.empty()) {
    write_output(o.trace_path, csv_with_header(h, format_trace(r.trace)), out);
  }
  if (!o.dump_stores_path.empty()) {
    json stores = {{"run", h},
                   {"primary", to_json(r.primary_store)},
                   {"secondary", to_json(r.secondary_store)}};
    write_output(o.dump_stores_path, stores.dump(2) + "\n", out);
  }
}

int cmd_run(const Options& o, std::ostream& out) {
  const PolicyConfig config = load_config(o);
  const Topology topology = load_topology(o);
  const OffloadPolicy offload = offload_policy(o);
  const LoadedWorkload w = load_workload(o, o.seed);
  const Variant v = simulate(!o.baseline_only, config, topology, w.requests, o.seed, offload);

  json doc = header("run", o.seed, config, topology, w.description, offload);
  doc["variant"] = o.baseline_only ? "baseline" : "enhanced";
  const json h = doc;
  if (o.format == "csv") {
    write_output(o.out_path, csv_with_header(doc, to_csv(v.report)), out);
  } else {
    doc["report"] = to_json(v.report);
    write_output(o.out_path, doc.dump(2) + "\n", out);
  }
  write_side_outputs(o, h, v.result, out);
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const uint64_t baseline_seed = o.baseline_seed.value_or(o.seed);
  const uint64_t enhanced_seed = o.enhanced_seed.value_or(o.seed);
  if (baseline_seed != enhanced_seed) {
    throw MismatchError("baseline seed " + std::to_string(baseline_seed) +
                        " differs from enhanced seed " + std::to_string(enhanced_seed) +
                        "; a comparison needs one workload and one seed");
  }
  const PolicyConfig config = load_config(o);
  const Topology topology = load_topology(o);
  const OffloadPolicy offload = offload_policy(o);
  const LoadedWorkload w = load_workload(o, baseline_seed);

  auto baseline = std::async(std::launch::async, [&] {
    return simulate(false, config, topology, w.requests, baseline_seed, offload);
  });
  const Variant enhanced = simulate(true, config, topology, w.requests, enhanced_seed, offload);
  const Variant base = baseline.get();
  const ComparisonReport cmp = compare(base.report, enhanced.report);

  json doc = header("compare", baseline_seed, config, topology, w.description, offload);
  json h = doc;
  h["variant"] = "enhanced";
  if (o.format == "csv") {
    write_output(o.out_path, csv_with_header(doc, to_csv(cmp)), out);
  } else {
    doc["baseline"] = to_json(base.report);
    doc["enhanced"] = to_json(enhanced.report);
    doc["comparison"] = to_json(cmp);
    write_output(o.out_path, doc.dump(2) + "\n", out);
  }
  write_side_outputs(o, h, enhanced.result, out);
  return kExitOk;
}

int cmd_gen_workload(const Options& o, std::ostream& out) {
  const WorkloadSpec spec = workload_spec(o);
  const auto requests = generate_workload(spec, o.seed);
  std::ostringstream csv;
  write_workload_csv(csv, requests,
                     {"tool=edgepair command=gen-workload", "seed=" + std::to_string(o.seed),
                      "workload=" + to_json(spec).dump()});
  write_output(o.out_path, csv.str(), out);
  return kExitOk;
}

int cmd_presets(std::ostream& out) {
  json doc = json::object();
  for (const auto& name : preset_names()) {
    doc[name] = to_json(preset_workload(name, SimTime::FromMillis(10'000)));
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

void add_workload_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "Workload preset (camera, wearable)");
  cmd->add_option("--duration-s", o.duration_s, "Arrival window in seconds (default 10)");
  cmd->add_option("--rate", o.rate, "Poisson arrival rate per second");
  cmd->add_option("--interarrival-ms", o.interarrival_ms, "Fixed interarrival time");
  cmd->add_option("--critical-fraction", o.critical_fraction, "Share of critical requests");
  cmd->add_option("--service", o.service,
                  "Service demand law: det:MS, exp:MEAN_MS or lognormal:MU,SIGMA");
  cmd->add_option("--payload-bits", o.payload_bits, "Payload size per request");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "Policy config JSON");
  cmd->add_option("--topology", o.topology_path, "Node and fault schedule JSON");
  cmd->add_option("--workload", o.workload_path, "Workload CSV (otherwise generated)");
  cmd->add_option("--offload", o.offload, "Cloud offload policy: all, non_critical_only, none");
  cmd->add_option("--trace", o.trace_path, "Write the event trace (TSV) here");
  cmd->add_option("--dump-stores", o.dump_stores_path, "Write final node stores (JSON) here");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual edge-node failover and hedging simulator", "edgepair"};
  app.require_subcommand(1);
  Options o;

  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one variant and write its report");
  add_run_flags(run_cmd, o);
  add_workload_flags(run_cmd, o);
  run_cmd->add_flag("--baseline", o.baseline_only, "Run the single-node baseline instead");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Run baseline and enhanced on one workload and compare");
  add_run_flags(compare_cmd, o);
  add_workload_flags(compare_cmd, o);
  compare_cmd->add_option("--baseline-seed", o.baseline_seed, "Override the baseline seed");
  compare_cmd->add_option("--enhanced-seed", o.enhanced_seed, "Override the enhanced seed");

  CLI::App* gen_cmd = app.add_subcommand("gen-workload", "Write a generated workload CSV");
  add_workload_flags(gen_cmd, o);

  CLI::App* presets_cmd = app.add_subcommand("presets", "List workload presets");

  for (CLI::App* cmd : {run_cmd, compare_cmd, gen_cmd}) {
    cmd->add_option("--seed", o.seed, "Master seed (default 0)");
    cmd->add_option("--out", o.out_path, "Output path, - for stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUserError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(o, out);
    if (compare_cmd->parsed()) return cmd_compare(o, out);
    if (gen_cmd->parsed()) return cmd_gen_workload(o, out);
    if (presets_cmd->parsed()) return cmd_presets(out);
  } catch (const InvariantError& e) {
    err << "edgepair: internal invariant violated: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "edgepair: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "edgepair: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUserError;
}

}  // namespace edgepair
