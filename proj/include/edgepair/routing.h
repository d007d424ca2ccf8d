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

#ifndef EDGEPAIR_ROUTING_H_
#define EDGEPAIR_ROUTING_H_

#include <variant>

#include "edgepair/domain.h"

namespace edgepair {

// Routing decisions are pure functions of their arguments. Per-request state
// (AttemptState) is owned by the caller.

enum class RouteError { kNoNodeAvailable };

using RouteResult = std::variant<NodeId, RouteError>;

struct AttemptState {
  int64_t request_id = 0;
  NodeId current_node = NodeId::kPrimary;
  SimTime dispatched_at;
  int attempt_index = 1;  // 1 or 2; 2 only after a kill-and-resend
};

struct HedgeDecision {
  enum class Action { kContinue, kKillAndResend, kFailRequest };
  Action action = Action::kContinue;
  NodeId target = NodeId::kSecondary;  // meaningful for kKillAndResend only

  static HedgeDecision Continue() { return {Action::kContinue, NodeId::kSecondary}; }
  static HedgeDecision KillAndResend(NodeId target) {
    return {Action::kKillAndResend, target};
  }
  static HedgeDecision FailRequest() { return {Action::kFailRequest, NodeId::kSecondary}; }

  bool operator==(const HedgeDecision&) const = default;
};

inline constexpr int kMaxAttempts = 2;

ScenarioId classify_scenario(NodeStatus primary, NodeStatus secondary);

/// First-dispatch target for `request`. Returns kNoNodeAvailable in S0.
RouteResult route(const Request& request, ScenarioId scenario, RoutingMode mode);

/// Decision at a threshold check for an attempt that has not responded yet.
///
/// Below the request's class threshold the attempt continues. At or beyond
/// it, a first attempt on the primary is killed and resent to the secondary
/// as long as the secondary is reachable. Anything else has no remaining
/// recourse: kFailRequest tells the caller to let the attempt run to its
/// hard timeout and fail the request there.
HedgeDecision check_threshold(const AttemptState& attempt, SimTime now,
                              SimTime threshold, NodeStatus secondary_status);

/// Same rule as check_threshold for an attempt that ended in a node fault
/// (node down on arrival, or flushed by a crash). kFailRequest here is
/// terminal immediately.
HedgeDecision on_attempt_failed(const AttemptState& attempt,
                                NodeStatus secondary_status);

/// Exact response latency of a request hedged at its threshold: the breach
/// instant plus the round trip to the secondary, its queue wait and service.
SimTime hedge_latency_bound(SimTime threshold, SimTime link_secondary,
                            SimTime wait_secondary, SimTime service_secondary);

}  // namespace edgepair

#endif  // EDGEPAIR_ROUTING_H_
