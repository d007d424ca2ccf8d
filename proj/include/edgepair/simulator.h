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

#ifndef EDGEPAIR_SIMULATOR_H_
#define EDGEPAIR_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edgepair/domain.h"
#include "edgepair/node.h"
#include "edgepair/random.h"
#include "edgepair/store.h"

namespace edgepair {

struct NodeSpec {
  SimTime link_latency = SimTime::FromMillis(5);
  // Service-time law of this node. When unset the node takes each request's
  // own service_demand.
  std::optional<Distribution> service;

  bool operator==(const NodeSpec&) const = default;
};

struct Topology {
  NodeSpec primary;
  NodeSpec secondary;
  std::vector<FaultEvent> faults;

  bool operator==(const Topology&) const = default;
};

/// {"primary": {"link_ms": 5, "service": {...}}, "secondary": {...},
///  "faults": [{"node": "primary", "down_at_ms": 500, "up_at_ms": 1500}]}
/// Every field is optional; unknown fields throw SpecError.
Topology topology_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Topology& topology);

// Declaration order is the tie-break order for events at the same instant.
// A response arriving exactly at the threshold is on time because Response
// sorts before ThresholdCheck.
enum class EventKind {
  kFaultDown,
  kHeartbeatDeadline,
  kHeartbeat,
  kNodeCompletion,
  kResponse,
  kThresholdCheck,
  kArrival,
  kNodeArrival,
  kSyncTick,
  kFaultUp,
  kHardTimeout,
};

std::string_view to_string(EventKind kind);

struct TraceEntry {
  SimTime time;
  EventKind kind = EventKind::kArrival;
  std::optional<int64_t> request_id;
  std::optional<NodeId> node;
  std::string detail;

  bool operator==(const TraceEntry&) const = default;
};

/// One line per event: "time_us\tkind\trequest_id\tnode\tdetail", with "-"
/// for absent fields.
std::string format_trace(const std::vector<TraceEntry>& trace);

enum class Terminal { kCompleted, kFailed };
enum class HedgeReason { kNone, kThreshold, kAttemptFailed };

struct AttemptRecord {
  enum class Result { kPending, kCompleted, kCancelled, kFailed, kTimedOut };

  NodeId node = NodeId::kPrimary;
  int index = 1;
  SimTime dispatched_at;
  std::optional<SimTime> arrived_at;
  std::optional<SimTime> service_start;
  std::optional<SimTime> service_time;
  std::optional<SimTime> ended_at;
  Result result = Result::kPending;

  bool operator==(const AttemptRecord&) const = default;
};

struct RequestOutcome {
  int64_t request_id = 0;
  Criticality criticality = Criticality::kNormal;
  SimTime arrival;
  std::optional<NodeId> first_node;
  std::optional<NodeId> served_by;
  bool hedged = false;
  HedgeReason hedge_reason = HedgeReason::kNone;
  std::optional<SimTime> latency;  // present iff completed
  Terminal terminal = Terminal::kFailed;
  bool missed_deadline = false;
  int64_t payload_bits = 0;
  int64_t bits_to_cloud = 0;
  std::vector<AttemptRecord> attempts;

  bool operator==(const RequestOutcome&) const = default;
};

struct ScenarioChange {
  SimTime at;
  ScenarioId scenario = ScenarioId::kS2;
  bool operator==(const ScenarioChange&) const = default;
};

struct RunResult {
  std::vector<RequestOutcome> outcomes;  // in workload order
  std::vector<TraceEntry> trace;
  std::vector<ScenarioChange> scenario_timeline;  // empty for baseline runs
  SimTime end_time;
  KvStore primary_store;
  KvStore secondary_store;
};

/// Dual-node run: primary plus reserved secondary, with heartbeat health
/// tracking, threshold hedging, failover and background sync. `requests`
/// must be sorted by arrival with unique ids.
RunResult run(const PolicyConfig& config, const Topology& topology,
              const std::vector<Request>& requests, uint64_t seed);

/// Single-node run of the same model: the secondary is absent, so there is
/// no hedging and no failover. Primary faults fail the affected requests.
RunResult run_baseline(const PolicyConfig& config, const Topology& topology,
                       const std::vector<Request>& requests, uint64_t seed);

enum class OffloadPolicy { kAll, kNonCriticalOnly, kNone };

std::optional<OffloadPolicy> parse_offload_policy(std::string_view s);
std::string_view to_string(OffloadPolicy p);

/// Sets bits_to_cloud on every completed outcome matching `policy` (zero on
/// the others) and returns the total.
int64_t cloud_offload_accounting(std::vector<RequestOutcome>& outcomes,
                                 OffloadPolicy policy);

/// Checks the run-level invariants (one outcome per request, latency iff
/// completed, at most two attempts, time-ordered trace). Throws
/// InvariantError on the first violation.
void check_run_invariants(const RunResult& result, const std::vector<Request>& requests);

std::string_view to_string(Terminal t);
std::string_view to_string(HedgeReason r);
std::string_view to_string(AttemptRecord::Result r);

}  // namespace edgepair

#endif  // EDGEPAIR_SIMULATOR_H_
