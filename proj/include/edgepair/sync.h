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

#ifndef EDGEPAIR_SYNC_H_
#define EDGEPAIR_SYNC_H_

#include <string>
#include <vector>

#include "edgepair/node.h"
#include "edgepair/store.h"

namespace edgepair {

// Background replication between the two edge nodes: asynchronous log
// shipping with last-writer-wins conflict resolution.

/// Writes locally and appends to the node's replication log with the next
/// seq. Throws NodeDownError if the node is down.
SyncRecord record_update(EdgeNode& node, std::string key, std::string value,
                         SimTime now);

/// Ships every record from `from` whose lag has elapsed and that `to` has not
/// yet applied. Returns the shipped records in log order (records that lose
/// the LWW comparison are still consumed). Returns nothing when either node
/// is down; the records stay in the log.
std::vector<SyncRecord> replicate(const EdgeNode& from, EdgeNode& to,
                                  SimTime now, SimTime sync_lag);

/// True iff both stores map the same keys to the same values.
bool converged(const KvStore& a, const KvStore& b);

}  // namespace edgepair

#endif  // EDGEPAIR_SYNC_H_
