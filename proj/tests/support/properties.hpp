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

#ifndef HOLOSLICE_TESTS_SUPPORT_PROPERTIES_HPP_
#define HOLOSLICE_TESTS_SUPPORT_PROPERTIES_HPP_

#include <cstdint>
#include <memory>
#include <string>

#include "net/topology.hpp"
#include "sim/simulator.hpp"

namespace props {

// Each checker returns an empty string on success, else the first violation.

// Random create/update/delete sequences against the slice engine.
std::string capacity_safety(std::shared_ptr<const holoslice::net::Topology> topo,
                            std::uint32_t seed, int sequences);

// The same random command streams through both southbound backends.
std::string backend_equivalence(std::uint32_t seed, int trials);

// Two slices share the fabric while a third flow forges one slice's tag
// toward the other slice's hosts.
std::string isolation(std::shared_ptr<const holoslice::net::Topology> topo);

// Every table hit in `result` matched the tag the packet carried, and every
// delivered packet carries `tag`.
std::string single_slice_isolation(const holoslice::sim::SimResult& result,
                                   holoslice::SliceTag tag);

// injected == delivered + dropped, per slice and overall.
std::string conservation(const holoslice::sim::SimResult& result);

}  // namespace props

#endif  // HOLOSLICE_TESTS_SUPPORT_PROPERTIES_HPP_
