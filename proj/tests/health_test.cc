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

#include "doctest.h"

namespace edgepair {
namespace {

constexpr SimTime ms(int64_t v) { return SimTime::FromMillis(v); }

TEST_CASE("heartbeat resets misses") {
  HealthState s = initial_health(3);
  s = on_heartbeat_deadline(s, NodeId::kPrimary, ms(50));
  s = on_heartbeat_deadline(s, NodeId::kPrimary, ms(100));
  CHECK(s.of(NodeId::kPrimary).consecutive_misses == 2);
  s = on_heartbeat(s, NodeId::kPrimary, ms(120));
  CHECK(s.of(NodeId::kPrimary).consecutive_misses == 0);
  CHECK(s.status(NodeId::kPrimary) == NodeStatus::kActive);
  CHECK(s.of(NodeId::kPrimary).last_heartbeat_at == ms(120));
}

TEST_CASE("heartbeat on an active node keeps it active") {
  HealthState s = initial_health(3);
  const HealthState after = on_heartbeat(s, NodeId::kSecondary, ms(50));
  CHECK(after.status(NodeId::kSecondary) == NodeStatus::kActive);
  CHECK(after.primary_role == s.primary_role);
}

TEST_CASE("misses accumulate to Inactive") {
  HealthState s = initial_health(3);
  s = on_heartbeat_deadline(s, NodeId::kPrimary, ms(50));
  CHECK(s.status(NodeId::kPrimary) == NodeStatus::kActive);
  s = on_heartbeat_deadline(s, NodeId::kPrimary, ms(100));
  CHECK(s.status(NodeId::kPrimary) == NodeStatus::kActive);
  s = on_heartbeat_deadline(s, NodeId::kPrimary, ms(150));
  CHECK(s.status(NodeId::kPrimary) == NodeStatus::kInactive);
  s = on_heartbeat_deadline(s, NodeId::kPrimary, ms(200));
  CHECK(s.status(NodeId::kPrimary) == NodeStatus::kInactive);
  CHECK(s.of(NodeId::kPrimary).consecutive_misses == 4);
}

TEST_CASE("status is Inactive iff misses reach the limit") {
  for (int limit = 1; limit <= 5; ++limit) {
    HealthState s = initial_health(limit);
    for (int k = 1; k <= 8; ++k) {
      s = on_heartbeat_deadline(s, NodeId::kSecondary, ms(50 * k));
      CHECK((s.status(NodeId::kSecondary) == NodeStatus::kInactive) == (k >= limit));
    }
  }
}

TEST_CASE("update_roles promotes and restores") {
  HealthState s = initial_health(1);
  s = update_roles(on_heartbeat_deadline(s, NodeId::kPrimary, ms(50)));
  CHECK(s.primary_role == NodeId::kSecondary);
  s = update_roles(on_heartbeat(s, NodeId::kPrimary, ms(100)));
  CHECK(s.primary_role == NodeId::kPrimary);
  s = update_roles(on_heartbeat_deadline(s, NodeId::kSecondary, ms(150)));
  CHECK(s.primary_role == NodeId::kPrimary);
  // Both down: the holder keeps the role, so exactly one node has it.
  s = update_roles(on_heartbeat_deadline(s, NodeId::kPrimary, ms(200)));
  CHECK(s.primary_role == NodeId::kPrimary);
}

TEST_CASE("cloud has no health entry") {
  HealthState s = initial_health(3);
  CHECK_THROWS_AS(s.of(NodeId::kCloud), InvariantError);
}

}  // namespace
}  // namespace edgepair
