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

#ifndef EDGEPAIR_RANDOM_H_
#define EDGEPAIR_RANDOM_H_

#include <cstdint>
#include <random>
#include <variant>

#include "edgepair/domain.h"

namespace edgepair {

// Seeded random streams. The std:: distribution classes are
// implementation-defined, so the transforms here are written out to keep
// sampled streams identical across standard libraries.

enum class Stream : uint64_t {
  kArrivals = 1,
  kCriticality = 2,
  kServiceDemand = 3,
  kPayload = 4,
  kPrimaryService = 5,
  kSecondaryService = 6,
};

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from a master seed.
  static Rng ForStream(uint64_t master_seed, Stream stream);

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi].
  int64_t uniform_int(int64_t lo, int64_t hi);
  double standard_normal();
  double exponential(double mean);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Deterministic {
  SimTime value;
  bool operator==(const Deterministic&) const = default;
};

/// exp(N(mu, sigma^2)) milliseconds.
struct Lognormal {
  double mu = 0.0;
  double sigma = 0.0;
  bool operator==(const Lognormal&) const = default;
};

struct Exponential {
  SimTime mean;
  bool operator==(const Exponential&) const = default;
};

using Distribution = std::variant<Deterministic, Lognormal, Exponential>;

/// Draws a service time. Samples are rounded to whole microseconds and
/// never below 1 us.
SimTime sample(const Distribution& dist, Rng& rng);

/// Analytic mean in milliseconds.
double mean_ms(const Distribution& dist);

/// Throws SpecError when parameters are out of range.
void validate(const Distribution& dist);

/// Text form used on the command line: "det:30", "exp:12.5",
/// "lognormal:2.0,1.7" (mu, sigma of ln-milliseconds).
Distribution parse_distribution(std::string_view text);
std::string to_text(const Distribution& dist);

nlohmann::json to_json(const Distribution& dist);
/// {"kind":"deterministic","ms":30} | {"kind":"exponential","mean_ms":10} |
/// {"kind":"lognormal","mu":2.0,"sigma":1.7}
Distribution distribution_from_json(const nlohmann::json& j);

}  // namespace edgepair

#endif  // EDGEPAIR_RANDOM_H_
