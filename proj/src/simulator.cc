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

#include "edgepair/simulator.h"

#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "edgepair/health.h"
#include "edgepair/routing.h"
#include "edgepair/sync.h"

namespace edgepair {
namespace {

using nlohmann::json;

constexpr int64_t kNoRequest = -1;
// Keys written by request processing and replicated between the nodes.
constexpr int64_t kSyncKeySpace = 32;

struct Event {
  SimTime time;
  EventKind kind;
  uint64_t seq = 0;
  int64_t request = kNoRequest;  // index into the workload
  NodeId node = NodeId::kPrimary;
  int attempt = 0;
  uint64_t token = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.kind, a.seq) > std::tie(b.time, b.kind, b.seq);
  }
};

struct LiveRequest {
  AttemptState attempt;
  bool terminal = false;
};

class Simulation {
 public:
  Simulation(const PolicyConfig& config, const Topology& topology,
             const std::vector<Request>& requests, uint64_t seed, bool dual)
      : config_(config), requests_(requests), dual_(dual) {
    validate_faults(topology.faults);
    nodes_.emplace_back(NodeId::kPrimary, topology.primary.link_latency,
                        topology.primary.service, topology.faults,
                        Rng::ForStream(seed, Stream::kPrimaryService));
    if (dual_) {
      nodes_.emplace_back(NodeId::kSecondary, topology.secondary.link_latency,
                          topology.secondary.service, topology.faults,
                          Rng::ForStream(seed, Stream::kSecondaryService));
    }
    health_ = initial_health(config_.failure_miss_count);
    live_.resize(requests_.size());
    result_.outcomes.resize(requests_.size());

    SimTime horizon;
    for (size_t i = 0; i < requests_.size(); ++i) {
      const Request& r = requests_[i];
      if (i > 0 && r.arrival < requests_[i - 1].arrival) {
        throw SpecError("workload must be sorted by arrival");
      }
      if (!index_.emplace(r.id, i).second) {
        throw SpecError("duplicate request id " + std::to_string(r.id));
      }
      if (r.service_demand <= SimTime() || r.payload_bits < 0 || r.arrival < SimTime()) {
        throw SpecError("invalid request " + std::to_string(r.id));
      }
      RequestOutcome& o = result_.outcomes[i];
      o.request_id = r.id;
      o.criticality = r.criticality;
      o.arrival = r.arrival;
      o.payload_bits = r.payload_bits;
      push({r.arrival, EventKind::kArrival, 0, static_cast<int64_t>(i)});
      horizon = std::max(horizon, r.arrival);
    }
    outstanding_ = requests_.size();

    for (const auto& f : topology.faults) {
      if (!dual_ && f.node != NodeId::kPrimary) continue;
      push({f.down_at, EventKind::kFaultDown, 0, kNoRequest, f.node});
      push({f.up_at, EventKind::kFaultUp, 0, kNoRequest, f.node});
      horizon = std::max(horizon, f.up_at);
    }
    horizon_ = horizon + config_.heartbeat_interval * (config_.failure_miss_count + 2);

    if (dual_) {
      for (NodeId n : {NodeId::kPrimary, NodeId::kSecondary}) {
        push({SimTime(), EventKind::kHeartbeat, 0, kNoRequest, n});
        push({config_.heartbeat_interval, EventKind::kHeartbeatDeadline, 0, kNoRequest, n});
      }
      push({config_.sync_lag, EventKind::kSyncTick});
      scenario_ = classify_scenario(health_.status(NodeId::kPrimary),
                                    health_.status(NodeId::kSecondary));
      result_.scenario_timeline.push_back({SimTime(), scenario_});
    }
  }

  RunResult Run() && {
    while (!events_.empty()) {
      Event e = events_.top();
      events_.pop();
      now_ = e.time;
      std::string detail = Dispatch(e);
      TraceEntry t{e.time, e.kind, std::nullopt, std::nullopt, std::move(detail)};
      if (e.request != kNoRequest) t.request_id = requests_[static_cast<size_t>(e.request)].id;
      if (e.kind != EventKind::kSyncTick && e.kind != EventKind::kArrival) t.node = e.node;
      if (e.kind == EventKind::kArrival && trace_node_) t.node = *trace_node_;
      trace_node_.reset();
      result_.trace.push_back(std::move(t));
    }
    result_.end_time = now_;
    result_.primary_store = node(NodeId::kPrimary).store();
    if (dual_) result_.secondary_store = node(NodeId::kSecondary).store();
    return std::move(result_);
  }

 private:
  EdgeNode& node(NodeId id) { return nodes_.at(id == NodeId::kPrimary ? 0 : 1); }

  void push(Event e) {
    e.seq = next_seq_++;
    events_.push(e);
  }

  const CriticalityClass& class_of(size_t i) const {
    return config_.classes.at(config_.class_for(requests_[i].criticality));
  }

  AttemptRecord& current_record(size_t i) { return result_.outcomes[i].attempts.back(); }

  bool is_current(const Event& e) const {
    const LiveRequest& l = live_[static_cast<size_t>(e.request)];
    return !l.terminal && l.attempt.attempt_index == e.attempt &&
           l.attempt.current_node == e.node;
  }

  bool keep_periodic(SimTime next) const { return next <= horizon_ || outstanding_ > 0; }

  std::string Dispatch(const Event& e) {
    switch (e.kind) {
      case EventKind::kArrival:
        return OnArrival(static_cast<size_t>(e.request));
      case EventKind::kNodeArrival:
        return OnNodeArrival(e);
      case EventKind::kNodeCompletion:
        return OnNodeCompletion(e);
      case EventKind::kResponse:
        return OnResponse(e);
      case EventKind::kThresholdCheck:
        return OnThresholdCheck(e);
      case EventKind::kHardTimeout:
        return OnHardTimeout(e);
      case EventKind::kFaultDown:
      case EventKind::kFaultUp:
        return OnFault(e.node);
      case EventKind::kHeartbeat:
        return OnHeartbeat(e.node);
      case EventKind::kHeartbeatDeadline:
        return OnHeartbeatDeadline(e.node);
      case EventKind::kSyncTick:
        return OnSyncTick();
    }
    return "";
  }

  std::string OnArrival(size_t i) {
    NodeId target = NodeId::kPrimary;
    if (dual_) {
      RouteResult r = route(requests_[i], scenario_, config_.mode);
      if (std::holds_alternative<RouteError>(r)) {
        Fail(i);
        return "failed no-node-available " + std::string(to_string(scenario_));
      }
      target = std::get<NodeId>(r);
    }
    result_.outcomes[i].first_node = target;
    trace_node_ = target;
    SendAttempt(i, target, 1);
    return "dispatch attempt=1 " + std::string(to_string(scenario_));
  }

  void SendAttempt(size_t i, NodeId target, int attempt_index) {
    LiveRequest& l = live_[i];
    l.attempt = {requests_[i].id, target, now_, attempt_index};
    AttemptRecord rec;
    rec.node = target;
    rec.index = attempt_index;
    rec.dispatched_at = now_;
    result_.outcomes[i].attempts.push_back(rec);

    const auto req = static_cast<int64_t>(i);
    push({now_ + node(target).link_latency(), EventKind::kNodeArrival, 0, req, target,
          attempt_index});
    if (!dual_) return;
    const SimTime threshold = class_of(i).threshold;
    if (attempt_index == 1 && target == health_.primary_role) {
      push({now_ + threshold, EventKind::kThresholdCheck, 0, req, target, attempt_index});
    } else {
      push({now_ + threshold * config_.hard_timeout_factor, EventKind::kHardTimeout, 0, req,
            target, attempt_index});
    }
  }

  std::string OnNodeArrival(const Event& e) {
    if (!is_current(e)) return "noop cancelled-in-transit";
    const auto i = static_cast<size_t>(e.request);
    ApplyFaults(e.node);
    EdgeNode& n = node(e.node);
    if (!n.up()) {
      return "node-down " + AttemptFailed(i);
    }
    const size_t pos = n.admit(requests_[i].id, e.attempt, requests_[i].service_demand, now_);
    current_record(i).arrived_at = now_;
    ScheduleCompletion(e.node);
    return "queued pos=" + std::to_string(pos);
  }

  void ScheduleCompletion(NodeId id) {
    EdgeNode& n = node(id);
    auto next = n.next_completion();
    uint64_t& scheduled = scheduled_token_[id == NodeId::kPrimary ? 0 : 1];
    if (!next || next->token == scheduled) return;
    scheduled = next->token;
    const size_t i = index_.at(next->attempt.request_id);
    AttemptRecord& rec = current_record(i);
    rec.service_start = next->attempt.service_start;
    rec.service_time = next->attempt.service_time;
    push({next->finish, EventKind::kNodeCompletion, 0, static_cast<int64_t>(i), id,
          next->attempt.attempt_index, next->token});
  }

  std::string OnNodeCompletion(const Event& e) {
    ApplyFaults(e.node);
    EdgeNode& n = node(e.node);
    auto next = n.next_completion();
    if (!next || next->token != e.token || next->finish != now_) return "noop stale";
    const NodeAttempt done = n.complete(now_);
    const size_t i = index_.at(done.request_id);
    const SimTime wait = *done.service_start - done.arrived_at;
    if (dual_) {
      const int64_t id = requests_[i].id;
      record_update(n, "k" + std::to_string(id % kSyncKeySpace),
                    std::to_string(id) + "@" + std::string(to_string(e.node)), now_);
    }
    push({now_ + n.link_latency(), EventKind::kResponse, 0, static_cast<int64_t>(i), e.node,
          done.attempt_index});
    ScheduleCompletion(e.node);
    return "served wait_us=" + std::to_string(wait.micros()) +
           " service_us=" + std::to_string(done.service_time.micros());
  }

  std::string OnResponse(const Event& e) {
    if (!is_current(e)) return "noop discarded";
    const auto i = static_cast<size_t>(e.request);
    AttemptRecord& rec = current_record(i);
    rec.ended_at = now_;
    rec.result = AttemptRecord::Result::kCompleted;
    RequestOutcome& o = result_.outcomes[i];
    o.terminal = Terminal::kCompleted;
    o.served_by = e.node;
    o.latency = now_ - requests_[i].arrival;
    o.missed_deadline = *o.latency > class_of(i).deadline;
    Finish(i);
    return "completed latency_us=" + std::to_string(o.latency->micros());
  }

  std::string OnThresholdCheck(const Event& e) {
    if (!is_current(e)) return "noop";
    const auto i = static_cast<size_t>(e.request);
    const HedgeDecision d = check_threshold(live_[i].attempt, now_, class_of(i).threshold,
                                            health_.status(NodeId::kSecondary));
    switch (d.action) {
      case HedgeDecision::Action::kContinue:
        return "continue";
      case HedgeDecision::Action::kKillAndResend:
        KillCurrent(i, AttemptRecord::Result::kCancelled);
        result_.outcomes[i].hedged = true;
        result_.outcomes[i].hedge_reason = HedgeReason::kThreshold;
        SendAttempt(i, d.target, live_[i].attempt.attempt_index + 1);
        return "breach kill-and-resend " + std::string(to_string(d.target));
      case HedgeDecision::Action::kFailRequest:
        break;
    }
    push({live_[i].attempt.dispatched_at + class_of(i).threshold * config_.hard_timeout_factor,
          EventKind::kHardTimeout, 0, e.request, e.node, e.attempt});
    return "breach no-hedge hard-timeout-armed";
  }

  std::string OnHardTimeout(const Event& e) {
    if (!is_current(e)) return "noop";
    const auto i = static_cast<size_t>(e.request);
    KillCurrent(i, AttemptRecord::Result::kTimedOut);
    Fail(i);
    return "failed hard-timeout";
  }

  // Removes the current attempt from wherever it is. An attempt in transit
  // or whose response is in flight is dropped when its event fires.
  void KillCurrent(size_t i, AttemptRecord::Result why) {
    const NodeId at = live_[i].attempt.current_node;
    if (node(at).cancel(requests_[i].id, now_)) ScheduleCompletion(at);
    AttemptRecord& rec = current_record(i);
    rec.ended_at = now_;
    rec.result = why;
  }

  std::string AttemptFailed(size_t i) {
    AttemptRecord& rec = current_record(i);
    rec.ended_at = now_;
    rec.result = AttemptRecord::Result::kFailed;
    if (!dual_) {
      Fail(i);
      return "failed";
    }
    const HedgeDecision d = on_attempt_failed(live_[i].attempt, health_.status(NodeId::kSecondary));
    if (d.action == HedgeDecision::Action::kKillAndResend) {
      result_.outcomes[i].hedged = true;
      result_.outcomes[i].hedge_reason = HedgeReason::kAttemptFailed;
      SendAttempt(i, d.target, live_[i].attempt.attempt_index + 1);
      return "resend " + std::string(to_string(d.target));
    }
    Fail(i);
    return "failed";
  }

  void Fail(size_t i) {
    RequestOutcome& o = result_.outcomes[i];
    o.terminal = Terminal::kFailed;
    o.latency.reset();
    o.served_by.reset();
    o.missed_deadline = true;
    Finish(i);
  }

  void Finish(size_t i) {
    live_[i].terminal = true;
    --outstanding_;
  }

  // Brings a node's fault state up to now_, failing any flushed attempts.
  std::string ApplyFaults(NodeId id) {
    std::string detail;
    for (FaultTransition& t : node(id).apply_fault_schedule(now_)) {
      if (t.up) {
        detail += "up ";
        continue;
      }
      detail += "down flushed=" + std::to_string(t.failed.size()) + " ";
      for (const NodeAttempt& a : t.failed) {
        const size_t i = index_.at(a.request_id);
        const Event probe{now_, EventKind::kNodeArrival, 0, static_cast<int64_t>(i), id,
                          a.attempt_index};
        if (is_current(probe)) AttemptFailed(i);
      }
    }
    return detail;
  }

  std::string OnFault(NodeId id) {
    std::string d = ApplyFaults(id);
    if (d.empty()) d = "noop";
    if (!d.empty() && d.back() == ' ') d.pop_back();
    return d;
  }

  void UpdateScenario() {
    health_ = update_roles(health_);
    const ScenarioId s = classify_scenario(health_.status(NodeId::kPrimary),
                                           health_.status(NodeId::kSecondary));
    if (s != scenario_) {
      scenario_ = s;
      result_.scenario_timeline.push_back({now_, s});
    }
  }

  std::string OnHeartbeat(NodeId id) {
    ApplyFaults(id);
    std::string detail = "silent";
    if (node(id).up()) {
      health_ = on_heartbeat(health_, id, now_);
      UpdateScenario();
      detail = "beat";
    }
    const SimTime next = now_ + config_.heartbeat_interval;
    if (keep_periodic(next)) push({next, EventKind::kHeartbeat, 0, kNoRequest, id});
    return detail;
  }

  std::string OnHeartbeatDeadline(NodeId id) {
    std::string detail = "ok";
    if (health_.of(id).last_heartbeat_at + config_.heartbeat_interval < now_) {
      health_ = on_heartbeat_deadline(health_, id, now_);
      UpdateScenario();
      detail = "miss=" + std::to_string(health_.of(id).consecutive_misses) + " " +
               std::string(to_string(health_.status(id)));
    }
    const SimTime next = now_ + config_.heartbeat_interval;
    if (keep_periodic(next)) push({next, EventKind::kHeartbeatDeadline, 0, kNoRequest, id});
    return detail;
  }

  std::string OnSyncTick() {
    ApplyFaults(NodeId::kPrimary);
    ApplyFaults(NodeId::kSecondary);
    EdgeNode& p = node(NodeId::kPrimary);
    EdgeNode& s = node(NodeId::kSecondary);
    const size_t to_secondary = replicate(p, s, now_, config_.sync_lag).size();
    const size_t to_primary = replicate(s, p, now_, config_.sync_lag).size();
    const SimTime next = now_ + config_.sync_lag;
    if (keep_periodic(next)) push({next, EventKind::kSyncTick});
    return "p2s=" + std::to_string(to_secondary) + " s2p=" + std::to_string(to_primary);
  }

  const PolicyConfig& config_;
  const std::vector<Request>& requests_;
  const bool dual_;

  std::vector<EdgeNode> nodes_;
  HealthState health_;
  ScenarioId scenario_ = ScenarioId::kS1;
  std::vector<LiveRequest> live_;
  std::unordered_map<int64_t, size_t> index_;
  size_t outstanding_ = 0;
  SimTime horizon_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  uint64_t next_seq_ = 0;
  SimTime now_;
  std::array<uint64_t, 2> scheduled_token_{};
  std::optional<NodeId> trace_node_;

  RunResult result_;
};

void check_config(const PolicyConfig& config) {
  if (config.classes.empty() || config.default_class >= config.classes.size()) {
    throw ConfigError("classes: at least one class and a valid default are required");
  }
  if (config.heartbeat_interval <= SimTime() || config.sync_lag <= SimTime() ||
      config.failure_miss_count < 1 || config.hard_timeout_factor < 1) {
    throw ConfigError("config: periodic intervals and counts must be positive");
  }
}

void check_node_spec(const NodeSpec& spec, const char* which) {
  if (spec.link_latency < SimTime()) {
    throw SpecError(std::string(which) + ".link_ms must be >= 0");
  }
  if (spec.service) validate(*spec.service);
}

}  // namespace

RunResult run(const PolicyConfig& config, const Topology& topology,
              const std::vector<Request>& requests, uint64_t seed) {
  check_config(config);
  check_node_spec(topology.primary, "primary");
  check_node_spec(topology.secondary, "secondary");
  return Simulation(config, topology, requests, seed, /*dual=*/true).Run();
}

RunResult run_baseline(const PolicyConfig& config, const Topology& topology,
                       const std::vector<Request>& requests, uint64_t seed) {
  check_config(config);
  check_node_spec(topology.primary, "primary");
  return Simulation(config, topology, requests, seed, /*dual=*/false).Run();
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kFaultDown:
      return "FaultDown";
    case EventKind::kHeartbeatDeadline:
      return "HeartbeatDeadline";
    case EventKind::kHeartbeat:
      return "Heartbeat";
    case EventKind::kNodeCompletion:
      return "NodeCompletion";
    case EventKind::kResponse:
      return "Response";
    case EventKind::kThresholdCheck:
      return "ThresholdCheck";
    case EventKind::kArrival:
      return "Arrival";
    case EventKind::kNodeArrival:
      return "NodeArrival";
    case EventKind::kSyncTick:
      return "SyncTick";
    case EventKind::kFaultUp:
      return "FaultUp";
    case EventKind::kHardTimeout:
      return "HardTimeout";
  }
  return "?";
}

std::string_view to_string(Terminal t) {
  return t == Terminal::kCompleted ? "completed" : "failed";
}

std::string_view to_string(HedgeReason r) {
  switch (r) {
    case HedgeReason::kNone:
      return "none";
    case HedgeReason::kThreshold:
      return "threshold";
    case HedgeReason::kAttemptFailed:
      return "attempt_failed";
  }
  return "?";
}

std::string_view to_string(AttemptRecord::Result r) {
  switch (r) {
    case AttemptRecord::Result::kPending:
      return "pending";
    case AttemptRecord::Result::kCompleted:
      return "completed";
    case AttemptRecord::Result::kCancelled:
      return "cancelled";
    case AttemptRecord::Result::kFailed:
      return "failed";
    case AttemptRecord::Result::kTimedOut:
      return "timed_out";
  }
  return "?";
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::ostringstream out;
  for (const auto& t : trace) {
    out << t.time.micros() << '\t' << to_string(t.kind) << '\t';
    if (t.request_id) {
      out << *t.request_id;
    } else {
      out << '-';
    }
    out << '\t' << (t.node ? to_string(*t.node) : std::string_view("-")) << '\t'
        << (t.detail.empty() ? "-" : t.detail) << '\n';
  }
  return out.str();
}

std::optional<OffloadPolicy> parse_offload_policy(std::string_view s) {
  if (s == "all") return OffloadPolicy::kAll;
  if (s == "non_critical_only" || s == "non-critical") return OffloadPolicy::kNonCriticalOnly;
  if (s == "none") return OffloadPolicy::kNone;
  return std::nullopt;
}

std::string_view to_string(OffloadPolicy p) {
  switch (p) {
    case OffloadPolicy::kAll:
      return "all";
    case OffloadPolicy::kNonCriticalOnly:
      return "non_critical_only";
    case OffloadPolicy::kNone:
      return "none";
  }
  return "?";
}

int64_t cloud_offload_accounting(std::vector<RequestOutcome>& outcomes,
                                 OffloadPolicy policy) {
  int64_t total = 0;
  for (auto& o : outcomes) {
    bool offload = o.terminal == Terminal::kCompleted;
    if (policy == OffloadPolicy::kNone) offload = false;
    if (policy == OffloadPolicy::kNonCriticalOnly && o.criticality == Criticality::kCritical) {
      offload = false;
    }
    o.bits_to_cloud = offload ? o.payload_bits : 0;
    total += o.bits_to_cloud;
  }
  return total;
}

void check_run_invariants(const RunResult& result, const std::vector<Request>& requests) {
  auto fail = [](const std::string& msg) { throw InvariantError(msg); };
  if (result.outcomes.size() != requests.size()) fail("outcome count differs from workload");
  for (size_t i = 0; i < requests.size(); ++i) {
    const RequestOutcome& o = result.outcomes[i];
    const std::string who = "request " + std::to_string(o.request_id);
    if (o.request_id != requests[i].id) fail(who + ": outcome out of order");
    if (o.latency.has_value() != (o.terminal == Terminal::kCompleted)) {
      fail(who + ": latency must be present iff completed");
    }
    if (o.attempts.size() > static_cast<size_t>(kMaxAttempts)) fail(who + ": more than two attempts");
    if (o.hedged && o.attempts.size() != 2) fail(who + ": hedged without a second attempt");
    if (o.terminal == Terminal::kCompleted) {
      if (!o.served_by || o.attempts.empty() ||
          o.attempts.back().result != AttemptRecord::Result::kCompleted ||
          o.attempts.back().node != *o.served_by) {
        fail(who + ": completed without a completed final attempt");
      }
      if (o.hedged && o.first_node == o.served_by) fail(who + ": hedged but served by first node");
    }
    for (const auto& a : o.attempts) {
      if (a.result == AttemptRecord::Result::kPending) fail(who + ": attempt never terminated");
    }
  }
  for (size_t k = 1; k < result.trace.size(); ++k) {
    if (result.trace[k].time < result.trace[k - 1].time) fail("trace time went backwards");
  }
}

Topology topology_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("topology must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k != "primary" && k != "secondary" && k != "faults") {
      throw SpecError("topology: unknown field \"" + k + "\"");
    }
  }
  auto node_spec = [&](const char* which) {
    NodeSpec spec;
    if (!j.contains(which)) return spec;
    const json& n = j[which];
    if (!n.is_object()) throw SpecError(std::string(which) + " must be an object");
    for (const auto& [k, v] : n.items()) {
      if (k != "link_ms" && k != "service") {
        throw SpecError(std::string(which) + ": unknown field \"" + k + "\"");
      }
    }
    if (n.contains("link_ms")) {
      if (!n["link_ms"].is_number()) throw SpecError(std::string(which) + ".link_ms must be a number");
      try {
        spec.link_latency = ms_to_simtime(n["link_ms"].get<double>());
      } catch (const std::exception& e) {
        throw SpecError(std::string(which) + ".link_ms: " + e.what());
      }
    }
    if (n.contains("service") && !n["service"].is_null()) {
      spec.service = distribution_from_json(n["service"]);
    }
    return spec;
  };
  Topology t;
  t.primary = node_spec("primary");
  t.secondary = node_spec("secondary");
  if (j.contains("faults")) {
    const json& faults = j["faults"];
    if (!faults.is_array()) throw SpecError("faults must be an array");
    for (size_t i = 0; i < faults.size(); ++i) {
      const json& f = faults[i];
      const std::string where = "faults[" + std::to_string(i) + "]";
      if (!f.is_object()) throw SpecError(where + " must be an object");
      for (const auto& [k, v] : f.items()) {
        if (k != "node" && k != "down_at_ms" && k != "up_at_ms") {
          throw SpecError(where + ": unknown field \"" + k + "\"");
        }
      }
      FaultEvent ev;
      auto node = f.contains("node") && f["node"].is_string()
                      ? parse_node_id(f["node"].get<std::string>())
                      : std::nullopt;
      if (!node || *node == NodeId::kCloud) {
        throw SpecError(where + ".node must be \"primary\" or \"secondary\"");
      }
      ev.node = *node;
      for (auto [key, field] : {std::pair{"down_at_ms", &ev.down_at}, std::pair{"up_at_ms", &ev.up_at}}) {
        if (!f.contains(key) || !f[key].is_number()) {
          throw SpecError(where + "." + key + " must be a number");
        }
        try {
          *field = ms_to_simtime(f[key].get<double>());
        } catch (const std::exception& e) {
          throw SpecError(where + "." + key + ": " + e.what());
        }
      }
      t.faults.push_back(ev);
    }
  }
  validate_faults(t.faults);
  return t;
}

json to_json(const Topology& topology) {
  auto node_spec = [](const NodeSpec& n) {
    return json{{"link_ms", n.link_latency.millis()},
                {"service", n.service ? to_json(*n.service) : json()}};
  };
  json faults = json::array();
  for (const auto& f : topology.faults) {
    faults.push_back({{"node", to_string(f.node)},
                      {"down_at_ms", f.down_at.millis()},
                      {"up_at_ms", f.up_at.millis()}});
  }
  return {{"primary", node_spec(topology.primary)},
          {"secondary", node_spec(topology.secondary)},
          {"faults", faults}};
}

}  // namespace edgepair
