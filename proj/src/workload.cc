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

#include "edgepair/workload.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace edgepair {
namespace {

// 250 MB/s at 10 frames per second.
constexpr int64_t kCameraFrameBits = 250'000'000LL * 8 / 10;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

int64_t parse_int(const std::string& s, const std::string& what) {
  size_t used = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw SpecError(what + ": not an integer: \"" + s + "\"");
  }
  if (used != s.size()) throw SpecError(what + ": not an integer: \"" + s + "\"");
  return v;
}

}  // namespace

void validate(const WorkloadSpec& spec) {
  if (spec.duration <= SimTime()) throw SpecError("duration must be > 0");
  if (!(spec.critical_fraction >= 0.0 && spec.critical_fraction <= 1.0)) {
    throw SpecError("critical_fraction must be in [0, 1]");
  }
  if (const auto* p = std::get_if<PoissonArrivals>(&spec.arrival)) {
    if (!std::isfinite(p->rate_per_s) || p->rate_per_s < 0) {
      throw SpecError("rate must be >= 0");
    }
  } else if (std::get<FixedArrivals>(spec.arrival).interarrival <= SimTime()) {
    throw SpecError("interarrival must be > 0");
  }
  validate(spec.service_demand);
  if (spec.payload.min_bits < 0 || spec.payload.max_bits < spec.payload.min_bits) {
    throw SpecError("payload bits must satisfy 0 <= min <= max");
  }
}

std::vector<std::string> preset_names() { return {"camera", "wearable"}; }

WorkloadSpec preset_workload(std::string_view name, SimTime duration) {
  WorkloadSpec spec;
  spec.duration = duration;
  spec.preset = std::string(name);
  if (name == "camera") {
    spec.arrival = FixedArrivals{SimTime::FromMillis(100)};
    spec.critical_fraction = 0.1;
    spec.service_demand = Lognormal{std::log(20.0), 0.5};
    spec.payload = {kCameraFrameBits, kCameraFrameBits};
  } else if (name == "wearable") {
    spec.arrival = PoissonArrivals{5.0};
    spec.critical_fraction = 0.5;
    spec.service_demand = Lognormal{std::log(5.0), 0.4};
    spec.payload = {1024, 4096};
  } else {
    throw SpecError("unknown preset \"" + std::string(name) + "\"");
  }
  return spec;
}

std::vector<Request> generate_workload(const WorkloadSpec& spec, uint64_t seed) {
  validate(spec);
  Rng arrivals = Rng::ForStream(seed, Stream::kArrivals);
  Rng criticality = Rng::ForStream(seed, Stream::kCriticality);
  Rng demand = Rng::ForStream(seed, Stream::kServiceDemand);
  Rng payload = Rng::ForStream(seed, Stream::kPayload);

  std::vector<SimTime> times;
  if (const auto* p = std::get_if<PoissonArrivals>(&spec.arrival)) {
    if (p->rate_per_s > 0) {
      const double mean_us = 1e6 / p->rate_per_s;
      // Accumulate in double so per-gap rounding does not bias the rate.
      double t = arrivals.exponential(mean_us);
      while (t < static_cast<double>(spec.duration.micros())) {
        times.push_back(SimTime::FromMicros(static_cast<int64_t>(std::floor(t))));
        t += arrivals.exponential(mean_us);
      }
    }
  } else {
    const SimTime gap = std::get<FixedArrivals>(spec.arrival).interarrival;
    for (SimTime t; t < spec.duration; t += gap) times.push_back(t);
  }

  std::vector<Request> out;
  out.reserve(times.size());
  for (size_t i = 0; i < times.size(); ++i) {
    Request r;
    r.id = static_cast<int64_t>(i);
    r.arrival = times[i];
    r.criticality = criticality.uniform() < spec.critical_fraction
                        ? Criticality::kCritical
                        : Criticality::kNormal;
    r.service_demand = sample(spec.service_demand, demand);
    r.payload_bits = payload.uniform_int(spec.payload.min_bits, spec.payload.max_bits);
    out.push_back(r);
  }
  return out;
}

nlohmann::json to_json(const WorkloadSpec& spec) {
  nlohmann::json arrival;
  if (const auto* p = std::get_if<PoissonArrivals>(&spec.arrival)) {
    arrival = {{"kind", "poisson"}, {"rate_per_s", p->rate_per_s}};
  } else {
    arrival = {{"kind", "fixed"},
               {"interarrival_ms", std::get<FixedArrivals>(spec.arrival).interarrival.millis()}};
  }
  return {{"preset", spec.preset.empty() ? nlohmann::json() : nlohmann::json(spec.preset)},
          {"duration_ms", spec.duration.millis()},
          {"arrival", arrival},
          {"critical_fraction", spec.critical_fraction},
          {"service_demand", to_json(spec.service_demand)},
          {"payload_bits", {{"min", spec.payload.min_bits}, {"max", spec.payload.max_bits}}}};
}

void write_workload_csv(std::ostream& out, const std::vector<Request>& requests,
                        const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "request_id,arrival_ms,criticality,service_demand_ms,payload_bits\n";
  for (const auto& r : requests) {
    out << r.id << ',' << format_ms(r.arrival) << ',' << to_string(r.criticality) << ','
        << format_ms(r.service_demand) << ',' << r.payload_bits << '\n';
  }
}

std::vector<Request> read_workload_csv(std::istream& in) {
  std::vector<Request> out;
  std::set<int64_t> ids;
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = "workload line " + std::to_string(line_no);
    if (!seen_header) {
      if (t != "request_id,arrival_ms,criticality,service_demand_ms,payload_bits") {
        throw SpecError(where + ": unexpected header \"" + t + "\"");
      }
      seen_header = true;
      continue;
    }
    const auto cells = split_csv(t);
    if (cells.size() != 5) throw SpecError(where + ": expected 5 fields");
    Request r;
    r.id = parse_int(trim(cells[0]), where + " request_id");
    if (!ids.insert(r.id).second) {
      throw SpecError(where + ": duplicate request_id " + std::to_string(r.id));
    }
    try {
      r.arrival = ms_to_simtime(std::string_view(trim(cells[1])));
      r.service_demand = ms_to_simtime(std::string_view(trim(cells[3])));
    } catch (const std::exception& e) {
      throw SpecError(where + ": " + e.what());
    }
    auto crit = parse_criticality(trim(cells[2]));
    if (!crit) throw SpecError(where + ": criticality must be critical or normal");
    r.criticality = *crit;
    if (r.service_demand <= SimTime()) {
      throw SpecError(where + ": service_demand_ms must be > 0");
    }
    r.payload_bits = parse_int(trim(cells[4]), where + " payload_bits");
    if (r.payload_bits < 0) throw SpecError(where + ": payload_bits must be >= 0");
    out.push_back(r);
  }
  if (!seen_header) throw SpecError("workload: missing CSV header");
  std::stable_sort(out.begin(), out.end(), [](const Request& a, const Request& b) {
    return std::tie(a.arrival, a.id) < std::tie(b.arrival, b.id);
  });
  return out;
}

}  // namespace edgepair
