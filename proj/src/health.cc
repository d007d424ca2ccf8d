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

#include "edgepair/health.h"

namespace edgepair {

const NodeHealth& HealthState::of(NodeId node) const {
  if (node == NodeId::kCloud) throw InvariantError("cloud has no health state");
  return nodes[node == NodeId::kPrimary ? 0 : 1];
}

NodeHealth& HealthState::of(NodeId node) {
  return const_cast<NodeHealth&>(std::as_const(*this).of(node));
}

HealthState initial_health(int failure_miss_count) {
  HealthState s;
  s.failure_miss_count = failure_miss_count;
  return s;
}

HealthState on_heartbeat(HealthState state, NodeId node, SimTime now) {
  NodeHealth& h = state.of(node);
  h.last_heartbeat_at = now;
  h.consecutive_misses = 0;
  h.status = NodeStatus::kActive;
  return state;
}

HealthState on_heartbeat_deadline(HealthState state, NodeId node, SimTime /*now*/) {
  NodeHealth& h = state.of(node);
  ++h.consecutive_misses;
  if (h.consecutive_misses >= state.failure_miss_count) h.status = NodeStatus::kInactive;
  return state;
}

HealthState update_roles(HealthState state) {
  const bool primary_up = state.status(NodeId::kPrimary) == NodeStatus::kActive;
  const bool secondary_up = state.status(NodeId::kSecondary) == NodeStatus::kActive;
  if (primary_up) {
    state.primary_role = NodeId::kPrimary;
  } else if (secondary_up) {
    state.primary_role = NodeId::kSecondary;
  }
  return state;
}

}  // namespace edgepair
