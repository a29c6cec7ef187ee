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

#include "control/catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace holoslice::control {

using nlohmann::json;

void IncCatalog::add(IncCatalogEntry entry) {
  entry.spec.name = entry.name;
  entry.spec.validate();
  for (const auto& e : entries_) {
    if (e.name == entry.name) {
      throw Error(ErrorCode::kDuplicateProgram,
                  "program '" + entry.name + "' already in catalog");
    }
  }
  entries_.push_back(std::move(entry));
}

const IncCatalogEntry& IncCatalog::select(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::kUnknownProgram,
              "no INC program named '" + std::string(name) + "'");
}

IncCatalog IncCatalog::from_json(std::string_view text) {
  IncCatalog catalog;
  try {
    json doc = json::parse(text.begin(), text.end(), nullptr, true, true);
    const json& list = doc.is_array() ? doc : doc.at("entries");
    for (const auto& j : list) {
      IncCatalogEntry e;
      e.name = j.at("name").get<std::string>();
      e.spec.name = e.name;
      e.spec.ratio = j.at("ratio").get<double>();
      e.spec.per_packet_delay =
          from_millis(j.value("per_packet_delay_ms", 0.0));
      e.spec.cpu_cost = j.value("cpu_cost", 0.0);
      catalog.add(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("catalog: ") + e.what());
  }
  return catalog;
}

IncCatalog IncCatalog::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open catalog '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

IncCatalog IncCatalog::defaults() {
  IncCatalog catalog;
  catalog.add(IncCatalogEntry{
      "transcoder",
      dataplane::ExternSpec{"transcoder", kTranscoderRatio,
                            from_millis(kTranscoderDelayMs),
                            kTranscoderCpuCost}});
  return catalog;
}

}  // namespace holoslice::control
