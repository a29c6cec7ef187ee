/* Copyright 2026 The holoslice Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HOLOSLICE_DATAPLANE_SWITCH_STATE_HPP_
#define HOLOSLICE_DATAPLANE_SWITCH_STATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "common/errors.hpp"
#include "common/types.hpp"

namespace holoslice::dataplane {

// An in-switch compute function such as the transcoder.
struct ExternSpec {
  std::string name;
  double ratio = 1.0;              // output/input size, in (0, 1]
  Duration per_packet_delay{0};
  double cpu_cost = 0.0;           // compute units per packet/s offered

  bool operator==(const ExternSpec&) const = default;
  void validate() const;
};

struct ExternRef {
  std::string id;

  auto operator<=>(const ExternRef&) const = default;
};

// ceil(size * ratio), never below one byte.
std::uint32_t scaled_size(std::uint32_t size, double ratio);

struct Packet {
  SliceTag tag;
  std::string stream_id;
  std::uint64_t seq = 0;
  std::uint32_t size = 0;
  Duration created_at{0};
  NodeId dst;
  // Set when the packet is addressed to a relay (edge server) that
  // re-addresses it to this node after processing.
  std::optional<NodeId> final_dst;
  std::vector<std::pair<NodeId, Duration>> provenance;
};

struct MatchKey {
  SliceTag tag;
  NodeId dst;

  auto operator<=>(const MatchKey&) const = default;
};

struct Forward {
  NodeId next_hop;
  bool operator==(const Forward&) const = default;
};
struct TranscodeThenForward {
  ExternRef ext;
  NodeId next_hop;
  bool operator==(const TranscodeThenForward&) const = default;
};
struct Drop {
  bool operator==(const Drop&) const = default;
};

using Action = std::variant<Forward, TranscodeThenForward, Drop>;

std::string describe(const Action& action);

struct TableEntry {
  MatchKey match;
  Action action;

  bool operator==(const TableEntry&) const = default;
};

struct InstalledExtern {
  ExternSpec spec;
  double cpu_charge = 0.0;

  bool operator==(const InstalledExtern&) const = default;
};

// Result of pushing one packet through a switch pipeline.
struct Emission {
  Packet packet;
  NodeId next_hop;
  Duration extra_delay{0};
  SliceTag entry_tag;  // tag of the entry whose action produced this packet
  bool transcoded = false;
};

class SwitchState {
 public:
  SwitchState(NodeId node, double cpu_capacity, Duration pipeline_delay);

  const NodeId& node() const { return node_; }
  double cpu_capacity() const { return cpu_capacity_; }
  double cpu_used() const { return cpu_used_; }
  Duration pipeline_delay() const { return pipeline_delay_; }
  const std::map<MatchKey, TableEntry>& tables() const { return tables_; }
  const std::map<ExternRef, InstalledExtern>& externs() const {
    return externs_;
  }

  // Throws kDuplicateEntry or kUnknownExtern.
  void install_entry(TableEntry entry);
  // Returns false when nothing matched (idempotent removal).
  bool remove_entry(const MatchKey& match);

  // Charges spec.cpu_cost * offered_pps against the CPU budget. Throws
  // kInsufficientCpu when the budget would be exceeded.
  ExternRef install_extern(const ExternSpec& spec, double offered_pps);
  // Throws kInvalidArgument while table entries still reference the extern.
  bool remove_extern(const ExternRef& ref);

  // Headroom check without mutating anything.
  bool can_host(const ExternSpec& spec, double offered_pps) const;

  const TableEntry* lookup(SliceTag tag, const NodeId& dst) const;

  // Forward -> one packet after pipeline_delay; TranscodeThenForward -> one
  // scaled packet after pipeline_delay + extern delay; no match or Drop ->
  // nothing.
  std::vector<Emission> process(const Packet& packet) const;

  bool operator==(const SwitchState&) const = default;

 private:
  NodeId node_;
  double cpu_capacity_;
  double cpu_used_ = 0.0;
  Duration pipeline_delay_;
  std::map<MatchKey, TableEntry> tables_;
  std::map<ExternRef, InstalledExtern> externs_;
  std::uint64_t next_extern_ = 0;
};

}  // namespace holoslice::dataplane

#endif  // HOLOSLICE_DATAPLANE_SWITCH_STATE_HPP_
