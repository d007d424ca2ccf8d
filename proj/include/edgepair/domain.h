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

#ifndef EDGEPAIR_DOMAIN_H_
#define EDGEPAIR_DOMAIN_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace edgepair {

// Error hierarchy. User-input problems (config, workload, precision,
// mismatched runs) are distinguished from internal invariant failures so the
// CLI can map them to different exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};
class PrecisionError : public Error {
 public:
  using Error::Error;
};
class SpecError : public Error {
 public:
  using Error::Error;
};
class MismatchError : public Error {
 public:
  using Error::Error;
};
class NodeDownError : public Error {
 public:
  using Error::Error;
};
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Simulation clock value: integer microseconds since simulation start.
class SimTime {
 public:
  constexpr SimTime() = default;
  static constexpr SimTime FromMicros(int64_t us) { return SimTime(us); }
  static constexpr SimTime FromMillis(int64_t ms) { return SimTime(ms * 1000); }

  constexpr int64_t micros() const { return us_; }
  constexpr double millis() const { return static_cast<double>(us_) / 1000.0; }

  constexpr SimTime operator+(SimTime o) const { return SimTime(us_ + o.us_); }
  constexpr SimTime operator-(SimTime o) const { return SimTime(us_ - o.us_); }
  constexpr SimTime operator*(int64_t k) const { return SimTime(us_ * k); }
  constexpr SimTime& operator+=(SimTime o) {
    us_ += o.us_;
    return *this;
  }
  constexpr auto operator<=>(const SimTime&) const = default;

 private:
  constexpr explicit SimTime(int64_t us) : us_(us) {}
  int64_t us_ = 0;
};

/// Converts decimal milliseconds to SimTime without rounding. Throws
/// PrecisionError when `ms` carries precision below one microsecond and
/// std::out_of_range when it is negative or not finite.
SimTime ms_to_simtime(double ms);

/// Exact decimal-string variant used by the CSV loader ("12.345").
SimTime ms_to_simtime(std::string_view ms);

double simtime_to_ms(SimTime t);

/// Shortest exact decimal rendering of `t` in milliseconds ("100", "0.5").
std::string format_ms(SimTime t);

enum class Criticality { kCritical, kNormal };

enum class NodeId { kPrimary, kSecondary, kCloud };

enum class NodeStatus { kActive, kInactive };

/// Operating scenario derived from the two edge-node statuses. kS0 is the
/// total outage case (both nodes inactive).
enum class ScenarioId { kS0, kS1, kS2, kS3 };

enum class RoutingMode { kStandbyHedge, kPartitioned };

std::string_view to_string(Criticality c);
std::string_view to_string(NodeId n);
std::string_view to_string(NodeStatus s);
std::string_view to_string(ScenarioId s);
std::string_view to_string(RoutingMode m);

std::optional<Criticality> parse_criticality(std::string_view s);
std::optional<NodeId> parse_node_id(std::string_view s);
std::optional<RoutingMode> parse_routing_mode(std::string_view s);

struct CriticalityClass {
  std::string name;
  SimTime threshold;  // hedge threshold
  SimTime deadline;   // reporting cut-off; >= threshold

  bool operator==(const CriticalityClass&) const = default;
};

struct Request {
  int64_t id = 0;
  SimTime arrival;
  // Selects the request's CriticalityClass via PolicyConfig::class_for.
  Criticality criticality = Criticality::kNormal;
  // Compute time required on a reference node.
  SimTime service_demand;
  int64_t payload_bits = 0;

  bool operator==(const Request&) const = default;
};

inline constexpr SimTime kDefaultThreshold = SimTime::FromMillis(100);
inline constexpr SimTime kDefaultDeadline = SimTime::FromMillis(150);
inline constexpr SimTime kDefaultHeartbeatInterval = SimTime::FromMillis(50);
inline constexpr int kDefaultFailureMissCount = 3;
inline constexpr SimTime kDefaultSyncLag = SimTime::FromMillis(1);
inline constexpr double kDefaultEnergyPerBitMicrojoules = 500.0;
inline constexpr int kDefaultHardTimeoutFactor = 10;

struct PolicyConfig {
  RoutingMode mode = RoutingMode::kStandbyHedge;
  std::vector<CriticalityClass> classes;
  // Index of the class used for requests with no class of their own.
  size_t default_class = 0;
  SimTime heartbeat_interval = kDefaultHeartbeatInterval;
  int failure_miss_count = kDefaultFailureMissCount;
  SimTime sync_lag = kDefaultSyncLag;
  double energy_per_bit_uj = kDefaultEnergyPerBitMicrojoules;
  // An attempt that cannot be hedged fails at dispatch + factor * threshold.
  int hard_timeout_factor = kDefaultHardTimeoutFactor;

  /// Class applied to requests of criticality `c`: a class literally named
  /// "critical" or "normal" when present, otherwise the default class.
  size_t class_for(Criticality c) const;

  bool operator==(const PolicyConfig&) const = default;
};

/// Parses and validates a config document. Omitted fields take defaults;
/// unknown fields are rejected. Throws ConfigError naming the first bad field.
PolicyConfig validate_config(const nlohmann::json& raw);

nlohmann::json to_json(const PolicyConfig& config);

}  // namespace edgepair

#endif  // EDGEPAIR_DOMAIN_H_
