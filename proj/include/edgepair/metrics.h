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

#ifndef EDGEPAIR_METRICS_H_
#define EDGEPAIR_METRICS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgepair/domain.h"
#include "edgepair/simulator.h"

namespace edgepair {

inline constexpr SimTime kFastPacedBound = SimTime::FromMillis(70);
inline constexpr SimTime kInteractiveBound = SimTime::FromMillis(150);

/// Nearest-rank percentile: the value at 1-based rank ceil(percent/100 * n)
/// of the ascending sample. `sorted` must be ascending and non-empty;
/// `percent` in (0, 100].
SimTime nearest_rank(const std::vector<SimTime>& sorted, int percent);

struct GroupMetrics {
  int64_t count = 0;
  int64_t completed = 0;
  int64_t failed = 0;
  // Latency statistics over completed requests; unset when none completed.
  std::optional<double> p50_ms;
  std::optional<double> p95_ms;
  std::optional<double> p99_ms;
  std::optional<double> max_ms;
  std::optional<double> mean_ms;
  // Miss rates are fractions of completed requests; zero when none completed.
  double miss_rate_70ms = 0.0;
  double miss_rate_150ms = 0.0;
  double miss_rate_class_deadline = 0.0;
  double hedge_rate = 0.0;    // hedged / count
  double availability = 0.0;  // completed / count
  int64_t bits_to_cloud = 0;
  double energy_joules = 0.0;
  std::map<std::string, int64_t> served_by;

  bool operator==(const GroupMetrics&) const = default;
};

struct MetricsReport {
  GroupMetrics overall;
  GroupMetrics critical;
  GroupMetrics normal;
  // Fraction of the run spent in each scenario; empty for baseline runs.
  std::map<std::string, double> scenario_share;

  bool operator==(const MetricsReport&) const = default;
};

/// Aggregates one run. Energy is bits_to_cloud (as set on the outcomes by
/// cloud_offload_accounting) times the configured microjoules per bit.
MetricsReport summarize(const std::vector<RequestOutcome>& outcomes,
                        const PolicyConfig& config,
                        const std::vector<ScenarioChange>& timeline = {},
                        SimTime end_time = SimTime());

struct MetricDelta {
  std::string group;
  std::string metric;
  std::optional<double> baseline;
  std::optional<double> enhanced;
  std::optional<double> delta;         // enhanced - baseline
  std::optional<double> relative_pct;  // delta / baseline * 100
  bool improved = false;

  bool operator==(const MetricDelta&) const = default;
};

struct ComparisonReport {
  std::vector<MetricDelta> deltas;

  const MetricDelta& at(std::string_view group, std::string_view metric) const;
};

/// Per-metric deltas between two reports of the same workload. Throws
/// MismatchError when request counts differ.
ComparisonReport compare(const MetricsReport& baseline, const MetricsReport& enhanced);

nlohmann::json to_json(const GroupMetrics& m);
nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const ComparisonReport& report);

/// Rows of "class,metric,value"; unset values are written empty.
std::string to_csv(const MetricsReport& report);
std::string to_csv(const ComparisonReport& report);

}  // namespace edgepair

#endif  // EDGEPAIR_METRICS_H_
