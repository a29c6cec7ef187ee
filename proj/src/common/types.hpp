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

#ifndef HOLOSLICE_COMMON_TYPES_HPP_
#define HOLOSLICE_COMMON_TYPES_HPP_

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>

namespace holoslice {

using NodeId = std::string;

// Bits per second. Integral so capacity arithmetic is exact and
// order-independent.
using Bandwidth = std::uint64_t;

// Simulated time and durations, nanosecond resolution.
using Duration = std::chrono::nanoseconds;

struct SliceTag {
  std::uint16_t ethertype = 0;

  auto operator<=>(const SliceTag&) const = default;
};

// Ethertype values handed out to slices start here and grow upward.
inline constexpr SliceTag kFirstSliceTag{0x88B5};

std::string to_string(SliceTag tag);  // "0x88b5"
SliceTag parse_slice_tag(const std::string& text);

// One direction of a bidirectional link.
struct Channel {
  NodeId from;
  NodeId to;

  auto operator<=>(const Channel&) const = default;
};

std::string to_string(const Channel& channel);  // "S10->S8"

Duration from_millis(double ms);
double to_seconds(Duration d);
double to_millis(Duration d);

// ceil(bytes * 8 / bps) seconds, in whole nanoseconds.
Duration serialization_delay(std::uint64_t bytes, Bandwidth bps);

}  // namespace holoslice

#endif  // HOLOSLICE_COMMON_TYPES_HPP_
