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

#include "edgepair/routing.h"

namespace edgepair {

ScenarioId classify_scenario(NodeStatus primary, NodeStatus secondary) {
  const bool p = primary == NodeStatus::kActive;
  const bool s = secondary == NodeStatus::kActive;
  if (p && !s) return ScenarioId::kS1;
  if (p && s) return ScenarioId::kS2;
  if (!p && s) return ScenarioId::kS3;
  return ScenarioId::kS0;
}

RouteResult route(const Request& request, ScenarioId scenario, RoutingMode mode) {
  switch (scenario) {
    case ScenarioId::kS1:
      return NodeId::kPrimary;
    case ScenarioId::kS2:
      if (mode == RoutingMode::kPartitioned &&
          request.criticality == Criticality::kCritical) {
        return NodeId::kSecondary;
      }
      return NodeId::kPrimary;
    case ScenarioId::kS3:
      return NodeId::kSecondary;
    case ScenarioId::kS0:
      break;
  }
  return RouteError::kNoNodeAvailable;
}

namespace {

bool can_hedge(const AttemptState& attempt, NodeStatus secondary_status) {
  return attempt.attempt_index == 1 && attempt.current_node == NodeId::kPrimary &&
         secondary_status == NodeStatus::kActive;
}

}  // namespace

HedgeDecision check_threshold(const AttemptState& attempt, SimTime now,
                              SimTime threshold, NodeStatus secondary_status) {
  if (now - attempt.dispatched_at < threshold) return HedgeDecision::Continue();
  if (can_hedge(attempt, secondary_status)) {
    return HedgeDecision::KillAndResend(NodeId::kSecondary);
  }
  return HedgeDecision::FailRequest();
}

HedgeDecision on_attempt_failed(const AttemptState& attempt,
                                NodeStatus secondary_status) {
  if (can_hedge(attempt, secondary_status)) {
    return HedgeDecision::KillAndResend(NodeId::kSecondary);
  }
  return HedgeDecision::FailRequest();
}

SimTime hedge_latency_bound(SimTime threshold, SimTime link_secondary,
                            SimTime wait_secondary, SimTime service_secondary) {
  return threshold + link_secondary * 2 + wait_secondary + service_secondary;
}

}  // namespace edgepair
