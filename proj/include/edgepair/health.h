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

#ifndef EDGEPAIR_HEALTH_H_
#define EDGEPAIR_HEALTH_H_

#include <array>
#include <utility>

#include "edgepair/domain.h"

namespace edgepair {

struct NodeHealth {
  SimTime last_heartbeat_at;
  int consecutive_misses = 0;
  NodeStatus status = NodeStatus::kActive;

  bool operator==(const NodeHealth&) const = default;
};

/// Heartbeat-derived view of both edge nodes. A node is Inactive iff it has
/// missed at least `failure_miss_count` consecutive heartbeats. Exactly one
/// node holds the primary role at any time.
struct HealthState {
  std::array<NodeHealth, 2> nodes;
  NodeId primary_role = NodeId::kPrimary;
  int failure_miss_count = kDefaultFailureMissCount;

  const NodeHealth& of(NodeId node) const;
  NodeHealth& of(NodeId node);
  NodeStatus status(NodeId node) const { return of(node).status; }

  bool operator==(const HealthState&) const = default;
};

HealthState initial_health(int failure_miss_count);

HealthState on_heartbeat(HealthState state, NodeId node, SimTime now);

/// Records one missed heartbeat for `node`.
HealthState on_heartbeat_deadline(HealthState state, NodeId node, SimTime now);

/// Promotes the secondary while the primary is Inactive and the secondary
/// Active; hands the role back as soon as the primary is Active again. With
/// both nodes Inactive the current holder keeps the role.
HealthState update_roles(HealthState state);

}  // namespace edgepair

#endif  // EDGEPAIR_HEALTH_H_
