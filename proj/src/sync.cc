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

#include "edgepair/sync.h"

#include <algorithm>

namespace edgepair {

Version version_of(const SyncRecord& record) {
  return {record.written_at, record.origin == NodeId::kPrimary ? 1 : 0, record.seq};
}

bool apply_lww(KvStore& store, const SyncRecord& record) {
  const Version v = version_of(record);
  auto [it, inserted] = store.try_emplace(record.key, VersionedValue{record.value, v});
  if (inserted) return true;
  if (it->second.version >= v) return false;
  it->second = {record.value, v};
  return true;
}

nlohmann::json to_json(const KvStore& store) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, v] : store) out[key] = v.value;
  return out;
}

SyncRecord record_update(EdgeNode& node, std::string key, std::string value,
                         SimTime now) {
  node.apply_fault_schedule(now);
  if (!node.up()) {
    throw NodeDownError("cannot write to " + std::string(to_string(node.id())) +
                        ": node is down");
  }
  auto& records = node.log().records;
  SyncRecord r{static_cast<int64_t>(records.size()) + 1, node.id(), std::move(key),
               std::move(value), now};
  apply_lww(node.store(), r);
  records.push_back(r);
  return r;
}

std::vector<SyncRecord> replicate(const EdgeNode& from, EdgeNode& to, SimTime now,
                                  SimTime sync_lag) {
  std::vector<SyncRecord> applied;
  if (!from.up() || !to.up()) return applied;
  const auto& records = from.log().records;
  int64_t& cursor = to.log().peer_applied_seq;
  // Records are in seq order and written_at is monotone in seq, so the
  // eligible ones form a contiguous run after the cursor.
  while (cursor < static_cast<int64_t>(records.size())) {
    const SyncRecord& r = records[static_cast<size_t>(cursor)];
    if (r.written_at + sync_lag > now) break;
    apply_lww(to.store(), r);
    applied.push_back(r);
    ++cursor;
  }
  return applied;
}

bool converged(const KvStore& a, const KvStore& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) {
           return x.first == y.first && x.second.value == y.second.value;
         });
}

}  // namespace edgepair
