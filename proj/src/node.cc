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

#include "edgepair/node.h"

#include <algorithm>

namespace edgepair {

void validate_faults(const std::vector<FaultEvent>& faults) {
  for (const auto& f : faults) {
    if (f.node == NodeId::kCloud) throw SpecError("faults: cloud node cannot fail");
    if (f.down_at < SimTime()) throw SpecError("faults: down_at must be >= 0");
    if (!(f.down_at < f.up_at)) throw SpecError("faults: down_at must be < up_at");
  }
  for (NodeId node : {NodeId::kPrimary, NodeId::kSecondary}) {
    std::vector<FaultEvent> mine;
    std::copy_if(faults.begin(), faults.end(), std::back_inserter(mine),
                 [&](const FaultEvent& f) { return f.node == node; });
    std::sort(mine.begin(), mine.end(),
              [](const auto& a, const auto& b) { return a.down_at < b.down_at; });
    for (size_t i = 1; i < mine.size(); ++i) {
      if (mine[i].down_at < mine[i - 1].up_at) {
        throw SpecError("faults: overlapping events for " +
                        std::string(to_string(node)));
      }
    }
  }
}

EdgeNode::EdgeNode(NodeId id, SimTime link_latency,
                   std::optional<Distribution> service,
                   std::vector<FaultEvent> faults, Rng rng)
    : id_(id),
      link_latency_(link_latency),
      service_(std::move(service)),
      rng_(std::move(rng)) {
  validate_faults(faults);
  for (const auto& f : faults) {
    if (f.node == id_) faults_.push_back(f);
  }
  std::sort(faults_.begin(), faults_.end(),
            [](const auto& a, const auto& b) { return a.down_at < b.down_at; });
}

size_t EdgeNode::admit(int64_t request_id, int attempt_index,
                       SimTime service_demand, SimTime now) {
  apply_fault_schedule(now);
  if (!up_) {
    throw NodeDownError(std::string(to_string(id_)) + " is down at t=" +
                        format_ms(now) + "ms");
  }
  NodeAttempt a;
  a.request_id = request_id;
  a.attempt_index = attempt_index;
  a.arrived_at = now;
  a.service_time = service_ ? sample(*service_, rng_) : service_demand;
  queue_.push_back(a);
  if (queue_.size() == 1) start_head(now);
  return queue_.size() - 1;
}

void EdgeNode::start_head(SimTime now) {
  if (queue_.empty()) return;
  queue_.front().service_start = now;
  ++token_;
}

std::optional<NodeCompletion> EdgeNode::next_completion() const {
  if (queue_.empty() || !queue_.front().service_start) return std::nullopt;
  const NodeAttempt& head = queue_.front();
  return NodeCompletion{head, *head.service_start + head.service_time, token_};
}

NodeAttempt EdgeNode::complete(SimTime now) {
  auto next = next_completion();
  if (!next || next->finish != now) {
    throw InvariantError("complete() called with no service finishing at t=" +
                         format_ms(now) + "ms");
  }
  NodeAttempt done = queue_.front();
  queue_.pop_front();
  start_head(now);
  return done;
}

bool EdgeNode::cancel(int64_t request_id, SimTime now) {
  auto it = std::find_if(queue_.begin(), queue_.end(), [&](const NodeAttempt& a) {
    return a.request_id == request_id;
  });
  if (it == queue_.end()) return false;
  const bool was_head = it == queue_.begin();
  queue_.erase(it);
  if (was_head) start_head(now);
  return true;
}

bool EdgeNode::scheduled_up(SimTime t) const {
  return std::none_of(faults_.begin(), faults_.end(), [&](const FaultEvent& f) {
    return f.down_at <= t && t < f.up_at;
  });
}

std::vector<FaultTransition> EdgeNode::apply_fault_schedule(SimTime now) {
  std::vector<FaultTransition> out;
  while (next_fault_ < faults_.size()) {
    const FaultEvent& f = faults_[next_fault_];
    if (!in_fault_) {
      if (f.down_at > now) break;
      FaultTransition t{f.down_at, false, {queue_.begin(), queue_.end()}};
      queue_.clear();
      up_ = false;
      in_fault_ = true;
      out.push_back(std::move(t));
    } else {
      if (f.up_at > now) break;
      up_ = true;
      in_fault_ = false;
      ++next_fault_;
      out.push_back({f.up_at, true, {}});
    }
  }
  return out;
}

}  // namespace edgepair
