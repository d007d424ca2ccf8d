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

#ifndef EDGEPAIR_WORKLOAD_H_
#define EDGEPAIR_WORKLOAD_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "edgepair/domain.h"
#include "edgepair/random.h"

namespace edgepair {

struct PoissonArrivals {
  double rate_per_s = 0.0;
  bool operator==(const PoissonArrivals&) const = default;
};

struct FixedArrivals {
  SimTime interarrival;
  bool operator==(const FixedArrivals&) const = default;
};

using ArrivalProcess = std::variant<PoissonArrivals, FixedArrivals>;

/// Uniform integer payload size in [min_bits, max_bits].
struct PayloadSpec {
  int64_t min_bits = 0;
  int64_t max_bits = 0;
  bool operator==(const PayloadSpec&) const = default;
};

struct WorkloadSpec {
  SimTime duration;
  ArrivalProcess arrival = PoissonArrivals{};
  double critical_fraction = 0.0;
  Distribution service_demand = Deterministic{SimTime::FromMillis(10)};
  PayloadSpec payload;
  std::string preset;  // empty when hand-specified

  bool operator==(const WorkloadSpec&) const = default;
};

void validate(const WorkloadSpec& spec);

/// Named presets: "camera" (10 Hz frames at 250 MB/s, so 200 Mbit each) and
/// "wearable" (sparse, mostly small, half critical).
WorkloadSpec preset_workload(std::string_view name, SimTime duration);
std::vector<std::string> preset_names();

/// Requests sorted by arrival, ids 0..n-1. Arrivals, criticality, service
/// demand and payload each draw from their own stream of `seed`.
std::vector<Request> generate_workload(const WorkloadSpec& spec, uint64_t seed);

nlohmann::json to_json(const WorkloadSpec& spec);

/// CSV with header request_id,arrival_ms,criticality,service_demand_ms,payload_bits.
/// `comments` are written first as "# " lines.
void write_workload_csv(std::ostream& out, const std::vector<Request>& requests,
                        const std::vector<std::string>& comments = {});

/// Parses the CSV format above, skipping '#' comment lines. Returns requests
/// sorted by (arrival, id). Throws SpecError naming the line on bad input.
std::vector<Request> read_workload_csv(std::istream& in);

}  // namespace edgepair

#endif  // EDGEPAIR_WORKLOAD_H_
