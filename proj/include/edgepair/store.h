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

#ifndef EDGEPAIR_STORE_H_
#define EDGEPAIR_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "edgepair/domain.h"

namespace edgepair {

/// One replicated write. (origin, seq) is unique and seq is gapless per
/// origin, starting at 1.
struct SyncRecord {
  int64_t seq = 0;
  NodeId origin = NodeId::kPrimary;
  std::string key;
  std::string value;
  SimTime written_at;

  bool operator==(const SyncRecord&) const = default;
};

/// Last-writer-wins version. Later written_at wins; at equal written_at the
/// primary's write wins; seq breaks the remaining ties within one origin.
struct Version {
  SimTime written_at;
  int origin_rank = 0;  // primary ranks above secondary
  int64_t seq = 0;

  auto operator<=>(const Version&) const = default;
};

Version version_of(const SyncRecord& record);

struct VersionedValue {
  std::string value;
  Version version;

  bool operator==(const VersionedValue&) const = default;
};

using KvStore = std::map<std::string, VersionedValue>;

/// Writes `record` into `store` if it is newer than what the key holds.
/// Returns whether the store changed.
bool apply_lww(KvStore& store, const SyncRecord& record);

/// Per-node replication state: records this node originated plus how far it
/// has consumed the peer's log.
struct ReplicationLog {
  std::vector<SyncRecord> records;
  int64_t peer_applied_seq = 0;
};

nlohmann::json to_json(const KvStore& store);

}  // namespace edgepair

#endif  // EDGEPAIR_STORE_H_
