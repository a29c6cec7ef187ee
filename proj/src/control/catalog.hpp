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

#ifndef HOLOSLICE_CONTROL_CATALOG_HPP_
#define HOLOSLICE_CONTROL_CATALOG_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dataplane/switch_state.hpp"

namespace holoslice::control {

struct IncCatalogEntry {
  std::string name;
  dataplane::ExternSpec spec;
};

// Default transcoder: 60% byte reduction at 0.2 ms per packet.
inline constexpr double kTranscoderRatio = 0.4;
inline constexpr double kTranscoderDelayMs = 0.2;
inline constexpr double kTranscoderCpuCost = 0.5;

class IncCatalog {
 public:
  // Throws kDuplicateProgram on a repeated name.
  void add(IncCatalogEntry entry);
  // Exact-name lookup; throws kUnknownProgram.
  const IncCatalogEntry& select(std::string_view name) const;
  const std::vector<IncCatalogEntry>& entries() const { return entries_; }

  // {"entries": [{name, ratio, per_packet_delay_ms, cpu_cost}, ...]}
  static IncCatalog from_json(std::string_view text);
  static IncCatalog from_file(const std::filesystem::path& path);
  static IncCatalog defaults();

 private:
  std::vector<IncCatalogEntry> entries_;
};

inline const IncCatalogEntry& select_program(const IncCatalog& catalog,
                                             std::string_view name) {
  return catalog.select(name);
}

}  // namespace holoslice::control

#endif  // HOLOSLICE_CONTROL_CATALOG_HPP_
