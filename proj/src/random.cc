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

#include "edgepair/random.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace edgepair {
namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double parse_number(std::string_view s) {
  std::string str(s);
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw SpecError("bad number in distribution: \"" + str + "\"");
  }
  if (used != str.size()) throw SpecError("bad number in distribution: \"" + str + "\"");
  return v;
}

SimTime parse_ms(std::string_view s) {
  try {
    return ms_to_simtime(parse_number(s));
  } catch (const PrecisionError& e) {
    throw SpecError(e.what());
  } catch (const std::out_of_range& e) {
    throw SpecError(e.what());
  }
}

}  // namespace

Rng Rng::ForStream(uint64_t master_seed, Stream stream) {
  return Rng(splitmix64(splitmix64(master_seed) ^ static_cast<uint64_t>(stream)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  if (hi <= lo) return lo;
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(engine_());
  // Rejection sampling for an unbiased draw.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % span;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<int64_t>(x % span);
}

double Rng::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double Rng::exponential(double mean) { return -mean * std::log(1.0 - uniform()); }

SimTime sample(const Distribution& dist, Rng& rng) {
  double ms = 0;
  if (const auto* d = std::get_if<Deterministic>(&dist)) {
    return std::max(d->value, SimTime::FromMicros(1));
  } else if (const auto* l = std::get_if<Lognormal>(&dist)) {
    ms = std::exp(l->mu + l->sigma * rng.standard_normal());
  } else {
    ms = rng.exponential(std::get<Exponential>(dist).mean.millis());
  }
  const double us = std::min(std::round(ms * 1000.0), 1e15);
  return SimTime::FromMicros(std::max<int64_t>(1, static_cast<int64_t>(us)));
}

double mean_ms(const Distribution& dist) {
  if (const auto* d = std::get_if<Deterministic>(&dist)) return d->value.millis();
  if (const auto* l = std::get_if<Lognormal>(&dist)) {
    return std::exp(l->mu + l->sigma * l->sigma / 2.0);
  }
  return std::get<Exponential>(dist).mean.millis();
}

void validate(const Distribution& dist) {
  if (const auto* d = std::get_if<Deterministic>(&dist)) {
    if (d->value <= SimTime()) throw SpecError("deterministic service time must be > 0");
  } else if (const auto* l = std::get_if<Lognormal>(&dist)) {
    if (!std::isfinite(l->mu) || !std::isfinite(l->sigma) || l->sigma < 0 ||
        l->mu > 30) {
      throw SpecError("lognormal needs finite mu <= 30 and sigma >= 0");
    }
  } else if (std::get<Exponential>(dist).mean <= SimTime()) {
    throw SpecError("exponential mean must be > 0");
  }
}

Distribution parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw SpecError("distribution must look like kind:params, got \"" +
                    std::string(text) + "\"");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  Distribution dist;
  if (kind == "det" || kind == "deterministic") {
    dist = Deterministic{parse_ms(args)};
  } else if (kind == "exp" || kind == "exponential") {
    dist = Exponential{parse_ms(args)};
  } else if (kind == "lognormal") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw SpecError("lognormal needs mu,sigma");
    dist = Lognormal{parse_number(args.substr(0, comma)),
                     parse_number(args.substr(comma + 1))};
  } else {
    throw SpecError("unknown distribution kind \"" + std::string(kind) + "\"");
  }
  validate(dist);
  return dist;
}

std::string to_text(const Distribution& dist) {
  if (const auto* d = std::get_if<Deterministic>(&dist)) return "det:" + format_ms(d->value);
  if (const auto* l = std::get_if<Lognormal>(&dist)) {
    return "lognormal:" + nlohmann::json(l->mu).dump() + "," +
           nlohmann::json(l->sigma).dump();
  }
  return "exp:" + format_ms(std::get<Exponential>(dist).mean);
}

nlohmann::json to_json(const Distribution& dist) {
  if (const auto* d = std::get_if<Deterministic>(&dist)) {
    return {{"kind", "deterministic"}, {"ms", d->value.millis()}};
  }
  if (const auto* l = std::get_if<Lognormal>(&dist)) {
    return {{"kind", "lognormal"}, {"mu", l->mu}, {"sigma", l->sigma}};
  }
  return {{"kind", "exponential"}, {"mean_ms", std::get<Exponential>(dist).mean.millis()}};
}

Distribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw SpecError("distribution must be an object with a \"kind\" string");
  }
  const std::string kind = j["kind"];
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw SpecError(kind + " distribution needs numeric \"" + key + "\"");
    }
    return j[key].get<double>();
  };
  auto millis = [&](const char* key) {
    try {
      return ms_to_simtime(number(key));
    } catch (const PrecisionError& e) {
      throw SpecError(std::string(key) + ": " + e.what());
    } catch (const std::out_of_range& e) {
      throw SpecError(std::string(key) + ": " + e.what());
    }
  };
  auto only = [&](std::set<std::string> keys) {
    keys.insert("kind");
    for (const auto& [k, v] : j.items()) {
      if (!keys.count(k)) throw SpecError("unknown distribution field \"" + k + "\"");
    }
  };
  Distribution dist;
  if (kind == "deterministic") {
    only({"ms"});
    dist = Deterministic{millis("ms")};
  } else if (kind == "exponential") {
    only({"mean_ms"});
    dist = Exponential{millis("mean_ms")};
  } else if (kind == "lognormal") {
    only({"mu", "sigma"});
    dist = Lognormal{number("mu"), number("sigma")};
  } else {
    throw SpecError("unknown distribution kind \"" + kind + "\"");
  }
  validate(dist);
  return dist;
}

}  // namespace edgepair
