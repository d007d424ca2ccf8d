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
#include <random>

#include "doctest.h"
#include "edgepair/routing.h"
#include "edgepair/sync.h"
#include "edgepair/workload.h"

namespace edgepair {
namespace {

constexpr SimTime ms(int64_t v) { return SimTime::FromMillis(v); }
constexpr SimTime us(int64_t v) { return SimTime::FromMicros(v); }

Topology det_topology(SimTime primary, SimTime secondary, SimTime link = ms(5)) {
  Topology t;
  t.primary = {link, Deterministic{primary}};
  t.secondary = {link, Deterministic{secondary}};
  return t;
}

Request req(int64_t id, SimTime at, Criticality c = Criticality::kNormal, int64_t bits = 8000) {
  return {id, at, c, ms(10), bits};
}

const PolicyConfig& default_config() {
  static const PolicyConfig cfg = validate_config(nlohmann::json::object());
  return cfg;
}

TEST_CASE("empty workload yields empty outcomes") {
  const Topology t = det_topology(ms(10), ms(10));
  CHECK(run(default_config(), t, {}, 0).outcomes.empty());
  CHECK(run_baseline(default_config(), t, {}, 0).outcomes.empty());
}

TEST_CASE("a slow primary is hedged to the secondary") {
  const Topology t = det_topology(ms(120), ms(30));
  const RunResult r = run(default_config(), t, {req(0, SimTime())}, 0);
  REQUIRE(r.outcomes.size() == 1);
  const RequestOutcome& o = r.outcomes[0];
  CHECK(o.hedged);
  CHECK(o.hedge_reason == HedgeReason::kThreshold);
  CHECK(o.terminal == Terminal::kCompleted);
  CHECK(o.latency == ms(140));
  CHECK(o.first_node == NodeId::kPrimary);
  CHECK(o.served_by == NodeId::kSecondary);
  REQUIRE(o.attempts.size() == 2);
  CHECK(o.attempts[0].result == AttemptRecord::Result::kCancelled);
  CHECK(o.attempts[0].ended_at == ms(100));
  CHECK(o.attempts[1].dispatched_at == ms(100));
  CHECK(o.attempts[1].arrived_at == ms(105));
  CHECK(o.attempts[1].ended_at == ms(140));
}

TEST_CASE("a fast primary is not hedged") {
  const RunResult r = run(default_config(), det_topology(ms(50), ms(30)), {req(0, SimTime())}, 0);
  const RequestOutcome& o = r.outcomes.at(0);
  CHECK_FALSE(o.hedged);
  CHECK(o.latency == ms(60));
  CHECK(o.served_by == NodeId::kPrimary);
}

TEST_CASE("a response exactly at the threshold is on time") {
  const RunResult r = run(default_config(), det_topology(ms(90), ms(30)), {req(0, SimTime())}, 0);
  CHECK_FALSE(r.outcomes.at(0).hedged);
  CHECK(r.outcomes.at(0).latency == ms(100));
}

TEST_CASE("baseline examples") {
  const Topology t = det_topology(ms(120), ms(30));
  const RunResult r = run_baseline(default_config(), t, {req(0, SimTime())}, 0);
  CHECK_FALSE(r.outcomes.at(0).hedged);
  CHECK(r.outcomes.at(0).latency == ms(130));
  CHECK(r.scenario_timeline.empty());

  Topology faulty = t;
  faulty.faults = {{NodeId::kPrimary, SimTime(), ms(1000)}};
  const RunResult f = run_baseline(default_config(), faulty, {req(0, ms(10))}, 0);
  CHECK(f.outcomes.at(0).terminal == Terminal::kFailed);
  CHECK_FALSE(f.outcomes.at(0).latency.has_value());
}

TEST_CASE("total outage fails fast") {
  Topology t = det_topology(ms(10), ms(10));
  t.faults = {{NodeId::kPrimary, SimTime(), ms(2000)}, {NodeId::kSecondary, SimTime(), ms(2000)}};
  const RunResult r = run(default_config(), t, {req(0, ms(1000))}, 0);
  const RequestOutcome& o = r.outcomes.at(0);
  CHECK(o.terminal == Terminal::kFailed);
  CHECK(o.attempts.empty());
}

TEST_CASE("a request crashing on the primary fails over") {
  Topology t = det_topology(ms(40), ms(30));
  t.faults = {{NodeId::kPrimary, ms(20), ms(5000)}};
  const RunResult r = run(default_config(), t, {req(0, SimTime())}, 0);
  const RequestOutcome& o = r.outcomes.at(0);
  CHECK(o.hedge_reason == HedgeReason::kAttemptFailed);
  CHECK(o.served_by == NodeId::kSecondary);
  // Flushed at 20, resent, 20 + 5 + 30 + 5.
  CHECK(o.latency == ms(60));
}

TEST_CASE("offload accounting") {
  const std::vector<Request> reqs = {req(0, SimTime(), Criticality::kNormal, 8000)};
  RunResult r = run(default_config(), det_topology(ms(10), ms(10)), reqs, 0);
  CHECK(cloud_offload_accounting(r.outcomes, OffloadPolicy::kNone) == 0);
  CHECK(cloud_offload_accounting(r.outcomes, OffloadPolicy::kNonCriticalOnly) == 8000);
  CHECK(r.outcomes[0].bits_to_cloud == 8000);

  WorkloadSpec spec;
  spec.duration = ms(3000);
  spec.arrival = PoissonArrivals{100};
  spec.critical_fraction = 0.4;
  spec.payload = {100, 100'000};
  const auto many = generate_workload(spec, 4);
  RunResult m = run(default_config(), det_topology(ms(3), ms(3)), many, 4);
  int64_t critical_bits = 0;
  for (const auto& o : m.outcomes) {
    if (o.terminal == Terminal::kCompleted && o.criticality == Criticality::kCritical) {
      critical_bits += o.payload_bits;
    }
  }
  const int64_t all = cloud_offload_accounting(m.outcomes, OffloadPolicy::kAll);
  const int64_t non = cloud_offload_accounting(m.outcomes, OffloadPolicy::kNonCriticalOnly);
  CHECK(all - non == critical_bits);
  CHECK(critical_bits > 0);
}

TEST_CASE("topology JSON") {
  const auto t = topology_from_json(nlohmann::json::parse(
      R"({"primary":{"link_ms":2,"service":{"kind":"deterministic","ms":30}},
          "faults":[{"node":"primary","down_at_ms":100,"up_at_ms":200}]})"));
  CHECK(t.primary.link_latency == ms(2));
  CHECK(t.secondary.link_latency == ms(5));
  CHECK_FALSE(t.secondary.service.has_value());
  REQUIRE(t.faults.size() == 1);
  CHECK(topology_from_json(to_json(t)) == t);
  CHECK_THROWS_AS(topology_from_json(nlohmann::json::parse(R"({"tertiary":{}})")), SpecError);
  CHECK_THROWS_AS(topology_from_json(nlohmann::json::parse(
                      R"({"faults":[{"node":"cloud","down_at_ms":1,"up_at_ms":2}]})")),
                  SpecError);
}

// Random scenario generator for the property checks below.
struct Scenario {
  PolicyConfig config;
  Topology topology;
  std::vector<Request> requests;
  uint64_t seed = 0;
};

Distribution random_dist(std::mt19937_64& gen) {
  switch (gen() % 3) {
    case 0:
      return Deterministic{us(static_cast<int64_t>(1000 + gen() % 60'000))};
    case 1:
      return Exponential{us(static_cast<int64_t>(1000 + gen() % 30'000))};
    default:
      return Lognormal{1.0 + static_cast<double>(gen() % 200) / 100.0, 0.3 + static_cast<double>(gen() % 120) / 100.0};
  }
}

Scenario random_scenario(uint64_t k, bool secondary_faults = true) {
  std::mt19937_64 gen(k * 7919 + 13);
  Scenario s;
  s.seed = k;
  nlohmann::json cfg = {
      {"mode", gen() % 2 ? "partitioned" : "standby_hedge"},
      {"classes",
       {{{"name", "critical"}, {"threshold_ms", 40 + gen() % 60}, {"deadline_ms", 150}},
        {{"name", "default"}, {"threshold_ms", 60 + gen() % 90}, {"deadline_ms", 200}}}},
      {"heartbeat_interval_ms", 20 + gen() % 60},
      {"failure_miss_count", 1 + gen() % 4},
      {"sync_lag_ms", 1 + gen() % 5},
  };
  s.config = validate_config(cfg);
  s.topology.primary = {us(static_cast<int64_t>(500 + gen() % 8000)), random_dist(gen)};
  s.topology.secondary = {us(static_cast<int64_t>(500 + gen() % 8000)), random_dist(gen)};
  if (gen() % 3 == 0) s.topology.secondary.service.reset();
  const SimTime duration = ms(2000 + static_cast<int64_t>(gen() % 2000));
  for (NodeId n : {NodeId::kPrimary, NodeId::kSecondary}) {
    if (n == NodeId::kSecondary && !secondary_faults) continue;
    SimTime t = ms(static_cast<int64_t>(gen() % 800));
    const int count = static_cast<int>(gen() % 3);
    for (int f = 0; f < count; ++f) {
      const SimTime down = t + ms(static_cast<int64_t>(gen() % 600));
      const SimTime up = down + ms(1 + static_cast<int64_t>(gen() % 700));
      s.topology.faults.push_back({n, down, up});
      t = up;
    }
  }
  WorkloadSpec w;
  w.duration = duration;
  w.arrival = PoissonArrivals{10.0 + static_cast<double>(gen() % 60)};
  w.critical_fraction = static_cast<double>(gen() % 100) / 100.0;
  w.service_demand = random_dist(gen);
  w.payload = {1, 5000};
  s.requests = generate_workload(w, k);
  return s;
}

ScenarioId scenario_at(const std::vector<ScenarioChange>& timeline, SimTime t) {
  ScenarioId s = timeline.front().scenario;
  for (const auto& c : timeline) {
    if (c.at > t) break;
    s = c.scenario;
  }
  return s;
}

SimTime link_of(const Topology& t, NodeId n) {
  return n == NodeId::kPrimary ? t.primary.link_latency : t.secondary.link_latency;
}

TEST_CASE("run properties over random scenarios") {
  // Coverage counters: the generator must actually exercise each path.
  size_t threshold_hedges = 0;
  size_t failover_hedges = 0;
  size_t s3_arrivals = 0;
  size_t s0_arrivals = 0;
  for (uint64_t k = 0; k < 60; ++k) {
    CAPTURE(k);
    const Scenario s = random_scenario(k);
    const RunResult r = run(s.config, s.topology, s.requests, s.seed);

    // Conservation plus the structural invariants.
    REQUIRE_NOTHROW(check_run_invariants(r, s.requests));
    size_t completed = 0;
    size_t failed = 0;
    for (const auto& o : r.outcomes) {
      (o.terminal == Terminal::kCompleted ? completed : failed)++;
    }
    REQUIRE(completed + failed == s.requests.size());

    for (size_t i = 0; i < r.outcomes.size(); ++i) {
      const RequestOutcome& o = r.outcomes[i];
      CAPTURE(o.request_id);
      REQUIRE(o.attempts.size() <= 2);
      // Causality along each attempt.
      SimTime prev = o.arrival;
      for (const AttemptRecord& a : o.attempts) {
        REQUIRE(a.dispatched_at >= prev);
        if (a.arrived_at) {
          REQUIRE(*a.arrived_at == a.dispatched_at + link_of(s.topology, a.node));
          if (a.service_start) REQUIRE(*a.service_start >= *a.arrived_at);
        }
        REQUIRE(a.ended_at.has_value());
        REQUIRE(*a.ended_at >= a.dispatched_at);
        prev = *a.ended_at;
      }
      if (o.attempts.size() == 2) {
        REQUIRE(o.hedged);
        REQUIRE(o.attempts[0].ended_at == o.attempts[1].dispatched_at);
      }

      // Hedge exactness for threshold hedges that completed.
      if (o.hedged && o.terminal == Terminal::kCompleted &&
          o.hedge_reason == HedgeReason::kThreshold) {
        const AttemptRecord& first = o.attempts[0];
        const AttemptRecord& second = o.attempts[1];
        const SimTime threshold =
            s.config.classes[s.config.class_for(o.criticality)].threshold;
        REQUIRE(first.dispatched_at == o.arrival);
        REQUIRE(second.dispatched_at == first.dispatched_at + threshold);
        const SimTime link = link_of(s.topology, second.node);
        const SimTime wait = *second.service_start - *second.arrived_at;
        REQUIRE(*o.latency == hedge_latency_bound(threshold, link, wait, *second.service_time));
        ++threshold_hedges;
      }
      failover_hedges += o.hedge_reason == HedgeReason::kAttemptFailed;

      // Scenario-3 totality.
      if (scenario_at(r.scenario_timeline, o.arrival) == ScenarioId::kS3) {
        REQUIRE(o.first_node == NodeId::kSecondary);
        ++s3_arrivals;
      }
      if (scenario_at(r.scenario_timeline, o.arrival) == ScenarioId::kS0) {
        REQUIRE(o.attempts.empty());
        REQUIRE(o.terminal == Terminal::kFailed);
        ++s0_arrivals;
      }
    }
  }
  CHECK(threshold_hedges > 0);
  CHECK(failover_hedges > 0);
  CHECK(s3_arrivals > 0);
  CHECK(s0_arrivals > 0);
}

TEST_CASE("determinism") {
  for (uint64_t k : {3, 17, 42}) {
    const Scenario s = random_scenario(k);
    const RunResult a = run(s.config, s.topology, s.requests, s.seed);
    const RunResult b = run(s.config, s.topology, s.requests, s.seed);
    CHECK(a.outcomes == b.outcomes);
    CHECK(format_trace(a.trace) == format_trace(b.trace));
    CHECK(a.scenario_timeline == b.scenario_timeline);
    CHECK(a.primary_store == b.primary_store);
    const RunResult c = run_baseline(s.config, s.topology, s.requests, s.seed);
    const RunResult d = run_baseline(s.config, s.topology, s.requests, s.seed);
    CHECK(c.outcomes == d.outcomes);
    CHECK(format_trace(c.trace) == format_trace(d.trace));
  }
}

TEST_CASE("stores converge once the run is quiet") {
  for (uint64_t k = 0; k < 20; ++k) {
    const Scenario s = random_scenario(k);
    const RunResult r = run(s.config, s.topology, s.requests, s.seed);
    CAPTURE(k);
    CHECK(converged(r.primary_store, r.secondary_store));
  }
}

// With StandbyHedge and a fault-free deterministic secondary, a critical
// request never waits longer than one threshold plus its secondary round
// trip, and the enhanced run never fails more than the baseline.
TEST_CASE("dominance") {
  for (uint64_t k = 0; k < 60; ++k) {
    CAPTURE(k);
    Scenario s = random_scenario(k, /*secondary_faults=*/false);
    s.config.mode = RoutingMode::kStandbyHedge;
    s.topology.secondary.service = Deterministic{ms(5 + static_cast<int64_t>(k % 20))};
    const RunResult e = run(s.config, s.topology, s.requests, s.seed);
    const RunResult b = run_baseline(s.config, s.topology, s.requests, s.seed);
    size_t enhanced_failed = 0;
    size_t baseline_failed = 0;
    for (const auto& o : b.outcomes) baseline_failed += o.terminal == Terminal::kFailed;
    for (const auto& o : e.outcomes) {
      if (o.terminal == Terminal::kFailed) {
        ++enhanced_failed;
        continue;
      }
      if (o.criticality != Criticality::kCritical) continue;
      const SimTime threshold = s.config.classes[s.config.class_for(o.criticality)].threshold;
      SimTime bound = threshold;
      const AttemptRecord& last = o.attempts.back();
      if (last.node == NodeId::kSecondary) {
        bound = hedge_latency_bound(threshold, s.topology.secondary.link_latency,
                                    *last.service_start - *last.arrived_at, *last.service_time);
      }
      REQUIRE(*o.latency <= bound);
    }
    CHECK(enhanced_failed <= baseline_failed);
  }
}

}  // namespace
}  // namespace edgepair
