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

#ifndef HOLOSLICE_CONTROL_ADAPTER_HPP_
#define HOLOSLICE_CONTROL_ADAPTER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "control/network.hpp"
#include "json.hpp"

namespace holoslice::control {

struct LinkStats {
  std::uint64_t bytes_carried = 0;
  double utilization = 0.0;
  Bandwidth reserved = 0;

  bool operator==(const LinkStats&) const = default;
};

struct SwitchStats {
  double cpu_capacity = 0.0;
  double cpu_used = 0.0;

  bool operator==(const SwitchStats&) const = default;
};

struct StatsSnapshot {
  std::uint64_t epoch = 0;
  std::map<Channel, LinkStats> link_stats;
  std::map<NodeId, SwitchStats> switch_stats;

  // Equality of everything but the epoch.
  bool same_state(const StatsSnapshot& other) const {
    return link_stats == other.link_stats && switch_stats == other.switch_stats;
  }
  bool operator==(const StatsSnapshot&) const = default;
};

inline constexpr const char* kSnapshotSchema = "holoslice.snapshot/v1";
nlohmann::json to_json(const StatsSnapshot& snapshot);

struct InstallEntry {
  NodeId node;
  dataplane::TableEntry entry;
};
struct RemoveEntry {
  NodeId node;
  dataplane::MatchKey match;
};
struct InstallExtern {
  NodeId node;
  dataplane::ExternSpec spec;
  double offered_pps = 0.0;
};
struct RemoveExtern {
  NodeId node;
  dataplane::ExternRef ref;
};

using Command = std::variant<InstallEntry, RemoveEntry, InstallExtern, RemoveExtern>;

struct Ack {
  bool changed = false;                   // false for a no-op removal
  std::optional<dataplane::ExternRef> ext;  // set by InstallExtern
  Duration cost{0};                       // control-channel latency charged
};

enum class BackendKind { kController, kDirectDevice };

const char* to_string(BackendKind kind);
BackendKind parse_backend(const std::string& name);

inline constexpr Duration kControllerCommandCost = std::chrono::milliseconds(5);
inline constexpr Duration kDirectCommandCost = std::chrono::milliseconds(1);

// Uniform southbound interface. Both backends expose identical operations
// and leave identical dataplane state behind for identical command streams;
// they differ only in how a command reaches the device and what it costs.
class Adapter {
 public:
  virtual ~Adapter() = default;

  virtual BackendKind kind() const = 0;

  // Consistent snapshot at the current quiescent point. Throws
  // kBackendUnavailable while the backend is detached.
  StatsSnapshot collect();

  // Throws kInvalidTarget for non-switch nodes and propagates dataplane
  // errors. Removals of absent state acknowledge with changed == false.
  Ack apply(const Command& command);

  Duration command_cost() const { return command_cost_; }
  void set_command_cost(Duration cost) { command_cost_ = cost; }

  void set_available(bool available) { available_ = available; }
  bool available() const { return available_; }

  Network& network() { return network_; }
  const Network& network() const { return network_; }

 protected:
  Adapter(Network& network, Duration cost)
      : network_(network), command_cost_(cost) {}

  virtual Ack dispatch(const Command& command) = 0;

  Network& network_;

 private:
  Duration command_cost_;
  bool available_ = true;
  std::uint64_t epoch_ = 0;
};

// Commands travel through a controller that keeps an ordered journal of
// every accepted command before programming the switch.
class ControllerBackend : public Adapter {
 public:
  explicit ControllerBackend(Network& network,
                             Duration cost = kControllerCommandCost)
      : Adapter(network, cost) {}

  BackendKind kind() const override { return BackendKind::kController; }
  const std::vector<std::string>& journal() const { return journal_; }

 protected:
  Ack dispatch(const Command& command) override;

 private:
  std::vector<std::string> journal_;
};

// Commands are written straight to the device.
class DirectDeviceBackend : public Adapter {
 public:
  explicit DirectDeviceBackend(Network& network,
                               Duration cost = kDirectCommandCost)
      : Adapter(network, cost) {}

  BackendKind kind() const override { return BackendKind::kDirectDevice; }

 protected:
  Ack dispatch(const Command& command) override;
};

std::unique_ptr<Adapter> make_adapter(BackendKind kind, Network& network);

// Applies a command to a switch; shared by both backends.
Ack execute(dataplane::SwitchState& sw, const Command& command);

}  // namespace holoslice::control

#endif  // HOLOSLICE_CONTROL_ADAPTER_HPP_
