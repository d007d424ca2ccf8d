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

#include "edgepair/metrics.h"

#include <algorithm>
#include <sstream>

namespace edgepair {
namespace {

using nlohmann::json;

json opt(const std::optional<double>& v) { return v ? json(*v) : json(); }

std::string cell(const std::optional<double>& v) { return v ? json(*v).dump() : ""; }

GroupMetrics summarize_group(const std::vector<const RequestOutcome*>& group,
                             const PolicyConfig& config) {
  GroupMetrics m;
  std::vector<SimTime> latencies;
  int64_t hedged = 0;
  int64_t miss70 = 0;
  int64_t miss150 = 0;
  int64_t miss_class = 0;
  for (const RequestOutcome* o : group) {
    ++m.count;
    if (o->hedged) ++hedged;
    m.served_by[o->served_by ? std::string(to_string(*o->served_by)) : "none"]++;
    m.bits_to_cloud += o->bits_to_cloud;
    if (o->terminal != Terminal::kCompleted) {
      ++m.failed;
      continue;
    }
    ++m.completed;
    const SimTime lat = *o->latency;
    latencies.push_back(lat);
    if (lat > kFastPacedBound) ++miss70;
    if (lat > kInteractiveBound) ++miss150;
    if (lat > config.classes.at(config.class_for(o->criticality)).deadline) ++miss_class;
  }
  if (m.count > 0) {
    m.hedge_rate = static_cast<double>(hedged) / static_cast<double>(m.count);
    m.availability = static_cast<double>(m.completed) / static_cast<double>(m.count);
  }
  if (!latencies.empty()) {
    std::sort(latencies.begin(), latencies.end());
    const double n = static_cast<double>(latencies.size());
    m.p50_ms = nearest_rank(latencies, 50).millis();
    m.p95_ms = nearest_rank(latencies, 95).millis();
    m.p99_ms = nearest_rank(latencies, 99).millis();
    m.max_ms = latencies.back().millis();
    int64_t sum_us = 0;
    for (SimTime t : latencies) sum_us += t.micros();
    m.mean_ms = static_cast<double>(sum_us) / n / 1000.0;
    m.miss_rate_70ms = static_cast<double>(miss70) / n;
    m.miss_rate_150ms = static_cast<double>(miss150) / n;
    m.miss_rate_class_deadline = static_cast<double>(miss_class) / n;
  }
  m.energy_joules = static_cast<double>(m.bits_to_cloud) * config.energy_per_bit_uj / 1e6;
  return m;
}

struct MetricRef {
  const char* name;
  std::optional<double> (*get)(const GroupMetrics&);
  bool higher_is_better;
};

const std::vector<MetricRef>& compared_metrics() {
  static const std::vector<MetricRef> kMetrics = {
      {"p50_ms", [](const GroupMetrics& m) { return m.p50_ms; }, false},
      {"p95_ms", [](const GroupMetrics& m) { return m.p95_ms; }, false},
      {"p99_ms", [](const GroupMetrics& m) { return m.p99_ms; }, false},
      {"max_ms", [](const GroupMetrics& m) { return m.max_ms; }, false},
      {"mean_ms", [](const GroupMetrics& m) { return m.mean_ms; }, false},
      {"miss_rate_70ms",
       [](const GroupMetrics& m) { return std::optional<double>(m.miss_rate_70ms); }, false},
      {"miss_rate_150ms",
       [](const GroupMetrics& m) { return std::optional<double>(m.miss_rate_150ms); }, false},
      {"miss_rate_class_deadline",
       [](const GroupMetrics& m) { return std::optional<double>(m.miss_rate_class_deadline); },
       false},
      {"failed",
       [](const GroupMetrics& m) { return std::optional<double>(static_cast<double>(m.failed)); },
       false},
      {"availability",
       [](const GroupMetrics& m) { return std::optional<double>(m.availability); }, true},
      {"energy_joules",
       [](const GroupMetrics& m) { return std::optional<double>(m.energy_joules); }, false},
  };
  return kMetrics;
}

}  // namespace

SimTime nearest_rank(const std::vector<SimTime>& sorted, int percent) {
  if (sorted.empty() || percent <= 0 || percent > 100) {
    throw std::invalid_argument("nearest_rank needs a non-empty sample and 0 < percent <= 100");
  }
  const size_t n = sorted.size();
  const size_t rank = (static_cast<size_t>(percent) * n + 99) / 100;
  return sorted[std::max<size_t>(rank, 1) - 1];
}

MetricsReport summarize(const std::vector<RequestOutcome>& outcomes,
                        const PolicyConfig& config,
                        const std::vector<ScenarioChange>& timeline, SimTime end_time) {
  std::vector<const RequestOutcome*> all;
  std::vector<const RequestOutcome*> critical;
  std::vector<const RequestOutcome*> normal;
  for (const auto& o : outcomes) {
    all.push_back(&o);
    (o.criticality == Criticality::kCritical ? critical : normal).push_back(&o);
  }
  MetricsReport r;
  r.overall = summarize_group(all, config);
  r.critical = summarize_group(critical, config);
  r.normal = summarize_group(normal, config);

  if (!timeline.empty() && end_time > timeline.front().at) {
    std::map<std::string, int64_t> spent;
    for (ScenarioId s : {ScenarioId::kS0, ScenarioId::kS1, ScenarioId::kS2, ScenarioId::kS3}) {
      spent[std::string(to_string(s))] = 0;
    }
    for (size_t k = 0; k < timeline.size(); ++k) {
      const SimTime until = k + 1 < timeline.size() ? timeline[k + 1].at : end_time;
      spent[std::string(to_string(timeline[k].scenario))] += (until - timeline[k].at).micros();
    }
    const double total = static_cast<double>((end_time - timeline.front().at).micros());
    for (const auto& [name, us] : spent) r.scenario_share[name] = static_cast<double>(us) / total;
  }
  return r;
}

const MetricDelta& ComparisonReport::at(std::string_view group, std::string_view metric) const {
  for (const auto& d : deltas) {
    if (d.group == group && d.metric == metric) return d;
  }
  throw std::out_of_range("no metric " + std::string(group) + "." + std::string(metric));
}

ComparisonReport compare(const MetricsReport& baseline, const MetricsReport& enhanced) {
  if (baseline.overall.count != enhanced.overall.count ||
      baseline.critical.count != enhanced.critical.count) {
    throw MismatchError("reports cover different workloads: " +
                        std::to_string(baseline.overall.count) + " vs " +
                        std::to_string(enhanced.overall.count) + " requests");
  }
  ComparisonReport out;
  const std::pair<const char*, const GroupMetrics*> groups[][2] = {
      {{"overall", &baseline.overall}, {"overall", &enhanced.overall}},
      {{"critical", &baseline.critical}, {"critical", &enhanced.critical}},
      {{"normal", &baseline.normal}, {"normal", &enhanced.normal}},
  };
  for (const auto& pair : groups) {
    for (const MetricRef& metric : compared_metrics()) {
      MetricDelta d;
      d.group = pair[0].first;
      d.metric = metric.name;
      d.baseline = metric.get(*pair[0].second);
      d.enhanced = metric.get(*pair[1].second);
      if (d.baseline && d.enhanced) {
        d.delta = *d.enhanced - *d.baseline;
        if (*d.delta == 0.0) {
          d.relative_pct = 0.0;
        } else if (*d.baseline != 0.0) {
          d.relative_pct = *d.delta / *d.baseline * 100.0;
        }
        d.improved = metric.higher_is_better ? *d.delta > 0 : *d.delta < 0;
      } else if (!d.baseline && !d.enhanced) {
        d.delta = 0.0;
        d.relative_pct = 0.0;
      }
      out.deltas.push_back(std::move(d));
    }
  }
  return out;
}

json to_json(const GroupMetrics& m) {
  return {{"count", m.count},
          {"completed", m.completed},
          {"failed", m.failed},
          {"p50_ms", opt(m.p50_ms)},
          {"p95_ms", opt(m.p95_ms)},
          {"p99_ms", opt(m.p99_ms)},
          {"max_ms", opt(m.max_ms)},
          {"mean_ms", opt(m.mean_ms)},
          {"miss_rate_70ms", m.miss_rate_70ms},
          {"miss_rate_150ms", m.miss_rate_150ms},
          {"miss_rate_class_deadline", m.miss_rate_class_deadline},
          {"hedge_rate", m.hedge_rate},
          {"availability", m.availability},
          {"bits_to_cloud", m.bits_to_cloud},
          {"energy_joules", m.energy_joules},
          {"served_by", m.served_by}};
}

json to_json(const MetricsReport& report) {
  return {{"overall", to_json(report.overall)},
          {"critical", to_json(report.critical)},
          {"normal", to_json(report.normal)},
          {"scenario_share", report.scenario_share}};
}

json to_json(const ComparisonReport& report) {
  json rows = json::array();
  for (const auto& d : report.deltas) {
    rows.push_back({{"group", d.group},
                    {"metric", d.metric},
                    {"baseline", opt(d.baseline)},
                    {"enhanced", opt(d.enhanced)},
                    {"delta", opt(d.delta)},
                    {"relative_pct", opt(d.relative_pct)},
                    {"improved", d.improved}});
  }
  return rows;
}

std::string to_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "class,metric,value\n";
  const std::pair<const char*, const GroupMetrics*> groups[] = {
      {"overall", &report.overall}, {"critical", &report.critical}, {"normal", &report.normal}};
  for (const auto& [name, m] : groups) {
    const json fields = to_json(*m);
    for (const auto& [key, value] : fields.items()) {
      if (value.is_object()) {
        for (const auto& [sub, v] : value.items()) {
          out << name << ',' << key << '.' << sub << ',' << v.dump() << '\n';
        }
      } else {
        out << name << ',' << key << ',' << (value.is_null() ? "" : value.dump()) << '\n';
      }
    }
  }
  for (const auto& [scenario, share] : report.scenario_share) {
    out << "run,scenario_share." << scenario << ',' << json(share).dump() << '\n';
  }
  return out.str();
}

std::string to_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "class,metric,baseline,enhanced,delta,relative_pct,improved\n";
  for (const auto& d : report.deltas) {
    out << d.group << ',' << d.metric << ',' << cell(d.baseline) << ',' << cell(d.enhanced)
        << ',' << cell(d.delta) << ',' << cell(d.relative_pct) << ','
        << (d.improved ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace edgepair
