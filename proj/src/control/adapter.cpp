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

#include "control/adapter.hpp"

namespace holoslice::control {

using nlohmann::json;

namespace {

const NodeId& target_of(const Command& command) {
  return std::visit([](const auto& c) -> const NodeId& { return c.node; },
                    command);
}

std::string describe(const Command& command) {
  struct {
    std::string operator()(const InstallEntry& c) const {
      return "install-entry " + c.node + " (" + to_string(c.entry.match.tag) +
             "," + c.entry.match.dst + ") " +
             dataplane::describe(c.entry.action);
    }
    std::string operator()(const RemoveEntry& c) const {
      return "remove-entry " + c.node + " (" + to_string(c.match.tag) + "," +
             c.match.dst + ")";
    }
    std::string operator()(const InstallExtern& c) const {
      return "install-extern " + c.node + " " + c.spec.name;
    }
    std::string operator()(const RemoveExtern& c) const {
      return "remove-extern " + c.node + " " + c.ref.id;
    }
  } visitor;
  return std::visit(visitor, command);
}

}  // namespace

const char* to_string(BackendKind kind) {
  return kind == BackendKind::kController ? "controller" : "direct";
}

BackendKind parse_backend(const std::string& name) {
  if (name == "controller") return BackendKind::kController;
  if (name == "direct") return BackendKind::kDirectDevice;
  throw Error(ErrorCode::kInvalidArgument, "unknown backend '" + name + "'");
}

json to_json(const StatsSnapshot& snapshot) {
  json links = json::object();
  for (const auto& [c, s] : snapshot.link_stats) {
    links[to_string(c)] = {{"bytes_carried", s.bytes_carried},
                           {"utilization", s.utilization},
                           {"reserved_bps", s.reserved}};
  }
  json switches = json::object();
  for (const auto& [id, s] : snapshot.switch_stats) {
    switches[id] = {{"cpu_capacity", s.cpu_capacity}, {"cpu_used", s.cpu_used}};
  }
  return json{{"schema", kSnapshotSchema},
              {"epoch", snapshot.epoch},
              {"link_stats", links},
              {"switch_stats", switches}};
}

StatsSnapshot Adapter::collect() {
  if (!available_) {
    throw Error(ErrorCode::kBackendUnavailable,
                std::string(to_string(kind())) + " backend unavailable");
  }
  StatsSnapshot snap;
  snap.epoch = ++epoch_;
  const auto& topo = network_.topology();
  const auto& channels = topo.channels();
  for (std::size_t i = 0; i < channels.size(); ++i) {
    LinkStats s;
    s.bytes_carried = network_.bytes_carried()[i];
    s.utilization = network_.utilization()[i];
    auto it = network_.reserved().find(channels[i]);
    s.reserved = it == network_.reserved().end() ? 0 : it->second;
    snap.link_stats.emplace(channels[i], s);
  }
  for (const auto& [id, sw] : network_.switches()) {
    snap.switch_stats.emplace(id, SwitchStats{sw.cpu_capacity(), sw.cpu_used()});
  }
  return snap;
}

Ack Adapter::apply(const Command& command) {
  if (!available_) {
    throw Error(ErrorCode::kBackendUnavailable,
                std::string(to_string(kind())) + " backend unavailable");
  }
  const NodeId& target = target_of(command);
  if (!network_.topology().contains(target)) {
    throw Error(ErrorCode::kInvalidTarget, "unknown node '" + target + "'");
  }
  network_.switch_state(target);  // throws kInvalidTarget for non-switches
  Ack ack = dispatch(command);
  ack.cost = command_cost_;
  return ack;
}

Ack execute(dataplane::SwitchState& sw, const Command& command) {
  struct {
    dataplane::SwitchState& sw;
    Ack operator()(const InstallEntry& c) const {
      sw.install_entry(c.entry);
      return Ack{true, std::nullopt, {}};
    }
    Ack operator()(const RemoveEntry& c) const {
      return Ack{sw.remove_entry(c.match), std::nullopt, {}};
    }
    Ack operator()(const InstallExtern& c) const {
      return Ack{true, sw.install_extern(c.spec, c.offered_pps), {}};
    }
    Ack operator()(const RemoveExtern& c) const {
      return Ack{sw.remove_extern(c.ref), std::nullopt, {}};
    }
  } visitor{sw};
  return std::visit(visitor, command);
}

Ack ControllerBackend::dispatch(const Command& command) {
  Ack ack = execute(network_.switch_state(target_of(command)), command);
  journal_.push_back(describe(command) + (ack.changed ? "" : " (no-op)"));
  return ack;
}

Ack DirectDeviceBackend::dispatch(const Command& command) {
  return execute(network_.switch_state(target_of(command)), command);
}

std::unique_ptr<Adapter> make_adapter(BackendKind kind, Network& network) {
  if (kind == BackendKind::kController) {
    return std::make_unique<ControllerBackend>(network);
  }
  return std::make_unique<DirectDeviceBackend>(network);
}

}  // namespace holoslice::control
