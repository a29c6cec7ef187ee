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

#include "dataplane/switch_state.hpp"

#include <cmath>

namespace holoslice::dataplane {

namespace {
// CPU charges are products of doubles; allow for rounding when comparing
// against the budget.
constexpr double kCpuSlack = 1e-9;
}  // namespace

void ExternSpec::validate() const {
  if (name.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "extern name must be non-empty");
  }
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "extern '" + name + "': ratio must be in (0, 1]");
  }
  if (per_packet_delay.count() < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "extern '" + name + "': negative per_packet_delay");
  }
  if (!(cpu_cost >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "extern '" + name + "': negative cpu_cost");
  }
}

std::uint32_t scaled_size(std::uint32_t size, double ratio) {
  if (ratio >= 1.0) return size;
  // Sizes are small integers; trim representation error in size * ratio
  // before rounding up so 1500 * 0.4 stays 600.
  const long double exact = static_cast<long double>(size) * ratio;
  const long double trimmed = exact - exact * 1e-12L;
  const auto out = static_cast<std::uint32_t>(std::ceil(trimmed));
  return out == 0 ? 1 : out;
}

std::string describe(const Action& action) {
  if (const auto* f = std::get_if<Forward>(&action)) {
    return "forward(" + f->next_hop + ")";
  }
  if (const auto* t = std::get_if<TranscodeThenForward>(&action)) {
    return "transcode(" + t->ext.id + ")+forward(" + t->next_hop + ")";
  }
  return "drop";
}

SwitchState::SwitchState(NodeId node, double cpu_capacity,
                         Duration pipeline_delay)
    : node_(std::move(node)),
      cpu_capacity_(cpu_capacity),
      pipeline_delay_(pipeline_delay) {
  if (!(cpu_capacity_ > 0.0)) {
    throw Error(ErrorCode::kInvalidCapacity,
                "switch '" + node_ + "' needs cpu_capacity > 0");
  }
  if (pipeline_delay_.count() < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "switch '" + node_ + "' has negative pipeline_delay");
  }
}

void SwitchState::install_entry(TableEntry entry) {
  if (tables_.count(entry.match)) {
    throw Error(ErrorCode::kDuplicateEntry,
                node_ + ": entry for (" + to_string(entry.match.tag) + ", " +
                    entry.match.dst + ") already installed");
  }
  if (const auto* t = std::get_if<TranscodeThenForward>(&entry.action)) {
    if (!externs_.count(t->ext)) {
      throw Error(ErrorCode::kUnknownExtern,
                  node_ + ": extern '" + t->ext.id + "' is not registered");
    }
  }
  tables_.emplace(entry.match, std::move(entry));
}

bool SwitchState::remove_entry(const MatchKey& match) {
  return tables_.erase(match) != 0;
}

bool SwitchState::can_host(const ExternSpec& spec, double offered_pps) const {
  const double charge = spec.cpu_cost * offered_pps;
  return cpu_used_ + charge <= cpu_capacity_ + kCpuSlack;
}

ExternRef SwitchState::install_extern(const ExternSpec& spec,
                                      double offered_pps) {
  spec.validate();
  if (!(offered_pps >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "offered rate must be >= 0");
  }
  if (!can_host(spec, offered_pps)) {
    throw Error(ErrorCode::kInsufficientCpu,
                node_ + ": '" + spec.name + "' needs " +
                    std::to_string(spec.cpu_cost * offered_pps) +
                    " compute units, " +
                    std::to_string(cpu_capacity_ - cpu_used_) + " free");
  }
  ExternRef ref{spec.name + "#" + std::to_string(next_extern_++)};
  const double charge = spec.cpu_cost * offered_pps;
  externs_.emplace(ref, InstalledExtern{spec, charge});
  cpu_used_ += charge;
  return ref;
}

bool SwitchState::remove_extern(const ExternRef& ref) {
  auto it = externs_.find(ref);
  if (it == externs_.end()) return false;
  for (const auto& [key, entry] : tables_) {
    const auto* t = std::get_if<TranscodeThenForward>(&entry.action);
    if (t != nullptr && t->ext == ref) {
      throw Error(ErrorCode::kInvalidArgument,
                  node_ + ": extern '" + ref.id + "' still referenced");
    }
  }
  cpu_used_ -= it->second.cpu_charge;
  if (externs_.size() == 1 || cpu_used_ < 0.0) cpu_used_ = 0.0;
  externs_.erase(it);
  return true;
}

const TableEntry* SwitchState::lookup(SliceTag tag, const NodeId& dst) const {
  auto it = tables_.find(MatchKey{tag, dst});
  return it == tables_.end() ? nullptr : &it->second;
}

std::vector<Emission> SwitchState::process(const Packet& packet) const {
  const TableEntry* entry = lookup(packet.tag, packet.dst);
  if (entry == nullptr) return {};
  if (const auto* f = std::get_if<Forward>(&entry->action)) {
    return {Emission{packet, f->next_hop, pipeline_delay_, entry->match.tag,
                     false}};
  }
  if (const auto* t = std::get_if<TranscodeThenForward>(&entry->action)) {
    const InstalledExtern& ext = externs_.at(t->ext);
    Emission out{packet, t->next_hop,
                 pipeline_delay_ + ext.spec.per_packet_delay,
                 entry->match.tag, true};
    out.packet.size = scaled_size(packet.size, ext.spec.ratio);
    return {out};
  }
  return {};
}

}  // namespace holoslice::dataplane
