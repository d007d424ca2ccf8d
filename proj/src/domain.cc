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

#include "edgepair/domain.h"

#include <cmath>
#include <limits>
#include <set>

namespace edgepair {
namespace {

using nlohmann::json;

constexpr int64_t kMaxMicros = std::numeric_limits<int64_t>::max() / 4;

[[noreturn]] void config_fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field + ": " + msg);
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) config_fail(where + key, "unknown field");
  }
}

SimTime read_ms(const json& obj, const std::string& key,
                const std::string& where, SimTime fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) config_fail(where + key, "must be a number");
  try {
    return ms_to_simtime(it->get<double>());
  } catch (const PrecisionError& e) {
    config_fail(where + key, e.what());
  } catch (const std::out_of_range& e) {
    config_fail(where + key, e.what());
  }
}

}  // namespace

SimTime ms_to_simtime(double ms) {
  if (!std::isfinite(ms) || ms < 0) {
    throw std::out_of_range("milliseconds must be finite and >= 0");
  }
  const double us = ms * 1000.0;
  if (us > static_cast<double>(kMaxMicros)) {
    throw std::out_of_range("milliseconds value too large");
  }
  const double rounded = std::round(us);
  // ms * 1000 is inexact in binary; accept only representation noise.
  if (std::fabs(us - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw PrecisionError("value has sub-microsecond precision");
  }
  return SimTime::FromMicros(static_cast<int64_t>(rounded));
}

SimTime ms_to_simtime(std::string_view ms) {
  if (ms.empty()) throw PrecisionError("empty millisecond value");
  int64_t whole = 0;
  int64_t frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (char c : ms) {
    if (c == '.') {
      if (seen_dot) throw PrecisionError("malformed millisecond value");
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') {
      throw PrecisionError("malformed millisecond value: " + std::string(ms));
    }
    seen_digit = true;
    const int d = c - '0';
    if (!seen_dot) {
      if (whole > (kMaxMicros / 1000 - d) / 10) {
        throw std::out_of_range("milliseconds value too large");
      }
      whole = whole * 10 + d;
    } else if (frac_digits < 3) {
      frac = frac * 10 + d;
      ++frac_digits;
    } else if (d != 0) {
      throw PrecisionError("value has sub-microsecond precision: " +
                           std::string(ms));
    }
  }
  if (!seen_digit) throw PrecisionError("malformed millisecond value");
  for (; frac_digits < 3; ++frac_digits) frac *= 10;
  return SimTime::FromMicros(whole * 1000 + frac);
}

double simtime_to_ms(SimTime t) { return t.millis(); }

std::string format_ms(SimTime t) {
  const int64_t us = t.micros();
  const bool negative = us < 0;
  const int64_t mag = negative ? -us : us;
  std::string out = std::to_string(mag / 1000);
  int64_t frac = mag % 1000;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 3 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return negative ? "-" + out : out;
}

std::string_view to_string(Criticality c) {
  return c == Criticality::kCritical ? "critical" : "normal";
}

std::string_view to_string(NodeId n) {
  switch (n) {
    case NodeId::kPrimary:
      return "primary";
    case NodeId::kSecondary:
      return "secondary";
    case NodeId::kCloud:
      return "cloud";
  }
  return "?";
}

std::string_view to_string(NodeStatus s) {
  return s == NodeStatus::kActive ? "active" : "inactive";
}

std::string_view to_string(ScenarioId s) {
  switch (s) {
    case ScenarioId::kS0:
      return "S0";
    case ScenarioId::kS1:
      return "S1";
    case ScenarioId::kS2:
      return "S2";
    case ScenarioId::kS3:
      return "S3";
  }
  return "?";
}

std::string_view to_string(RoutingMode m) {
  return m == RoutingMode::kStandbyHedge ? "standby_hedge" : "partitioned";
}

std::optional<Criticality> parse_criticality(std::string_view s) {
  if (s == "critical") return Criticality::kCritical;
  if (s == "normal") return Criticality::kNormal;
  return std::nullopt;
}

std::optional<NodeId> parse_node_id(std::string_view s) {
  if (s == "primary") return NodeId::kPrimary;
  if (s == "secondary") return NodeId::kSecondary;
  if (s == "cloud") return NodeId::kCloud;
  return std::nullopt;
}

std::optional<RoutingMode> parse_routing_mode(std::string_view s) {
  if (s == "standby_hedge") return RoutingMode::kStandbyHedge;
  if (s == "partitioned") return RoutingMode::kPartitioned;
  return std::nullopt;
}

size_t PolicyConfig::class_for(Criticality c) const {
  const std::string_view wanted = to_string(c);
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].name == wanted) return i;
  }
  return default_class;
}

PolicyConfig validate_config(const json& raw) {
  if (!raw.is_object()) config_fail("<root>", "config must be a JSON object");
  reject_unknown(raw,
                 {"mode", "classes", "heartbeat_interval_ms",
                  "failure_miss_count", "sync_lag_ms", "energy_per_bit_uj",
                  "hard_timeout_factor"},
                 "");

  PolicyConfig cfg;
  if (auto it = raw.find("mode"); it != raw.end()) {
    if (!it->is_string()) config_fail("mode", "must be a string");
    auto mode = parse_routing_mode(it->get<std::string>());
    if (!mode) config_fail("mode", "must be \"standby_hedge\" or \"partitioned\"");
    cfg.mode = *mode;
  }

  if (auto it = raw.find("classes"); it != raw.end()) {
    if (!it->is_array()) config_fail("classes", "must be an array");
    if (it->empty()) config_fail("classes", "must not be empty");
    std::set<std::string> names;
    for (size_t i = 0; i < it->size(); ++i) {
      const json& c = (*it)[i];
      const std::string where = "classes[" + std::to_string(i) + "].";
      if (!c.is_object()) config_fail("classes[" + std::to_string(i) + "]", "must be an object");
      reject_unknown(c, {"name", "threshold_ms", "deadline_ms"}, where);
      CriticalityClass cls;
      auto name = c.find("name");
      if (name == c.end() || !name->is_string() || name->get<std::string>().empty()) {
        config_fail(where + "name", "must be a non-empty string");
      }
      cls.name = name->get<std::string>();
      if (!names.insert(cls.name).second) {
        config_fail(where + "name", "duplicate class name \"" + cls.name + "\"");
      }
      cls.threshold = read_ms(c, "threshold_ms", where, kDefaultThreshold);
      if (cls.threshold <= SimTime()) config_fail(where + "threshold_ms", "threshold must be > 0");
      cls.deadline = read_ms(c, "deadline_ms", where, kDefaultDeadline);
      if (cls.deadline < cls.threshold) {
        config_fail(where + "deadline_ms", "deadline must be >= threshold");
      }
      cfg.classes.push_back(std::move(cls));
    }
  } else {
    cfg.classes.push_back({"default", kDefaultThreshold, kDefaultDeadline});
  }
  cfg.default_class = 0;
  for (size_t i = 0; i < cfg.classes.size(); ++i) {
    if (cfg.classes[i].name == "default") cfg.default_class = i;
  }

  cfg.heartbeat_interval =
      read_ms(raw, "heartbeat_interval_ms", "", kDefaultHeartbeatInterval);
  if (cfg.heartbeat_interval <= SimTime()) {
    config_fail("heartbeat_interval_ms", "heartbeat interval must be > 0");
  }

  if (auto it = raw.find("failure_miss_count"); it != raw.end()) {
    if (!it->is_number_integer() || it->get<int64_t>() < 1 ||
        it->get<int64_t>() > 1'000'000) {
      config_fail("failure_miss_count", "must be a positive integer");
    }
    cfg.failure_miss_count = it->get<int>();
  }

  cfg.sync_lag = read_ms(raw, "sync_lag_ms", "", kDefaultSyncLag);
  if (cfg.sync_lag <= SimTime()) config_fail("sync_lag_ms", "sync lag must be > 0");

  if (auto it = raw.find("energy_per_bit_uj"); it != raw.end()) {
    if (!it->is_number()) config_fail("energy_per_bit_uj", "must be a number");
    const double e = it->get<double>();
    if (!std::isfinite(e) || e < 0) config_fail("energy_per_bit_uj", "must be >= 0");
    cfg.energy_per_bit_uj = e;
  }

  if (auto it = raw.find("hard_timeout_factor"); it != raw.end()) {
    if (!it->is_number_integer() || it->get<int64_t>() < 1 ||
        it->get<int64_t>() > 1'000'000) {
      config_fail("hard_timeout_factor", "must be a positive integer");
    }
    cfg.hard_timeout_factor = it->get<int>();
  }
  return cfg;
}

json to_json(const PolicyConfig& config) {
  json classes = json::array();
  for (const auto& c : config.classes) {
    classes.push_back({{"name", c.name},
                       {"threshold_ms", c.threshold.millis()},
                       {"deadline_ms", c.deadline.millis()}});
  }
  return {{"mode", to_string(config.mode)},
          {"classes", std::move(classes)},
          {"heartbeat_interval_ms", config.heartbeat_interval.millis()},
          {"failure_miss_count", config.failure_miss_count},
          {"sync_lag_ms", config.sync_lag.millis()},
          {"energy_per_bit_uj", config.energy_per_bit_uj},
          {"hard_timeout_factor", config.hard_timeout_factor}};
}

}  // namespace edgepair
