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

#ifndef EDGEPAIR_NODE_H_
#define EDGEPAIR_NODE_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "edgepair/domain.h"
#include "edgepair/random.h"
#include "edgepair/store.h"

namespace edgepair {

struct FaultEvent {
  NodeId node = NodeId::kPrimary;
  SimTime down_at;
  SimTime up_at;

  bool operator==(const FaultEvent&) const = default;
};

/// Throws SpecError if any event is malformed or events for one node overlap.
void validate_faults(const std::vector<FaultEvent>& faults);

/// An attempt as seen by a node.
struct NodeAttempt {
  int64_t request_id = 0;
  int attempt_index = 1;
  SimTime arrived_at;
  SimTime service_time;
  // Set once the attempt reaches the head of the queue.
  std::optional<SimTime> service_start;

  bool operator==(const NodeAttempt&) const = default;
};

struct NodeCompletion {
  NodeAttempt attempt;
  SimTime finish;
  // Identifies this service period; changes whenever a new service starts.
  uint64_t token = 0;
};

struct FaultTransition {
  SimTime at;
  bool up = false;
  // Attempts flushed by a crash; empty on recovery.
  std::vector<NodeAttempt> failed;
};

/// Single-server FIFO edge node with a fault schedule and a local store.
///
/// Service starts as soon as an attempt is at the head of the queue and the
/// server is free. A node that is down accepts nothing. Crashing flushes the
/// queue; recovering leaves the queue empty and the store intact.
class EdgeNode {
 public:
  EdgeNode(NodeId id, SimTime link_latency, std::optional<Distribution> service,
           std::vector<FaultEvent> faults, Rng rng);

  NodeId id() const { return id_; }
  SimTime link_latency() const { return link_latency_; }
  bool up() const { return up_; }
  size_t queue_length() const { return queue_.size(); }
  const std::deque<NodeAttempt>& queue() const { return queue_; }

  /// Appends an attempt arriving at `now` and returns its queue position
  /// (0 means it went straight into service). Throws NodeDownError when the
  /// node is down at `now`.
  size_t admit(int64_t request_id, int attempt_index, SimTime service_demand,
               SimTime now);

  /// The attempt currently in service and when it finishes, if any.
  std::optional<NodeCompletion> next_completion() const;

  /// Finishes the in-service attempt (at its finish time) and starts the next.
  NodeAttempt complete(SimTime now);

  /// Removes a queued or in-service attempt. Cancelling the in-service
  /// attempt frees the server at `now`. Returns false if the attempt is no
  /// longer at this node.
  bool cancel(int64_t request_id, SimTime now);

  /// Applies every fault transition due at or before `now`. Idempotent.
  std::vector<FaultTransition> apply_fault_schedule(SimTime now);

  /// Whether the schedule has this node up at `t`.
  bool scheduled_up(SimTime t) const;

  const std::vector<FaultEvent>& faults() const { return faults_; }

  KvStore& store() { return store_; }
  const KvStore& store() const { return store_; }
  ReplicationLog& log() { return log_; }
  const ReplicationLog& log() const { return log_; }

 private:
  void start_head(SimTime now);

  NodeId id_;
  SimTime link_latency_;
  std::optional<Distribution> service_;
  std::vector<FaultEvent> faults_;
  Rng rng_;

  bool up_ = true;
  size_t next_fault_ = 0;
  bool in_fault_ = false;  // between down_at and up_at of faults_[next_fault_]
  std::deque<NodeAttempt> queue_;
  uint64_t token_ = 0;

  KvStore store_;
  ReplicationLog log_;
};

}  // namespace edgepair

#endif  // EDGEPAIR_NODE_H_
