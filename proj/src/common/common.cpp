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

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "common/errors.hpp"
#include "common/types.hpp"

namespace holoslice {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDuplicateNode: return "duplicate_node";
    case ErrorCode::kDanglingEndpoint: return "dangling_endpoint";
    case ErrorCode::kInvalidCapacity: return "invalid_capacity";
    case ErrorCode::kUnknownNode: return "unknown_node";
    case ErrorCode::kNoPath: return "no_path";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kDuplicateEntry: return "duplicate_entry";
    case ErrorCode::kUnknownExtern: return "unknown_extern";
    case ErrorCode::kInsufficientCpu: return "insufficient_cpu";
    case ErrorCode::kUnknownProgram: return "unknown_program";
    case ErrorCode::kDuplicateProgram: return "duplicate_program";
    case ErrorCode::kNoFeasiblePlacement: return "no_feasible_placement";
    case ErrorCode::kUnknownSlice: return "unknown_slice";
    case ErrorCode::kSliceNotActive: return "slice_not_active";
    case ErrorCode::kInvalidTarget: return "invalid_target";
    case ErrorCode::kBackendUnavailable: return "backend_unavailable";
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kNoPackets: return "no_packets";
    case ErrorCode::kInsufficientPackets: return "insufficient_packets";
    case ErrorCode::kZeroSpan: return "zero_span";
    case ErrorCode::kWorkloadMismatch: return "workload_mismatch";
    case ErrorCode::kRouteMismatch: return "route_mismatch";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

std::string to_string(SliceTag tag) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%04x", static_cast<unsigned>(tag.ethertype));
  return buf;
}

SliceTag parse_slice_tag(const std::string& text) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used, 0);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad slice tag '" + text + "'");
  }
  if (used != text.size() || value > 0xFFFF) {
    throw Error(ErrorCode::kParse, "bad slice tag '" + text + "'");
  }
  return SliceTag{static_cast<std::uint16_t>(value)};
}

std::string to_string(const Channel& channel) {
  return channel.from + "->" + channel.to;
}

Duration from_millis(double ms) {
  return Duration(std::llround(ms * 1e6));
}

double to_seconds(Duration d) { return static_cast<double>(d.count()) * 1e-9; }

double to_millis(Duration d) { return static_cast<double>(d.count()) * 1e-6; }

Duration serialization_delay(std::uint64_t bytes, Bandwidth bps) {
  if (bps == 0) throw Error(ErrorCode::kInvalidCapacity, "zero capacity");
  using u128 = unsigned __int128;
  const u128 bits_ns = static_cast<u128>(bytes) * 8u * 1'000'000'000u;
  return Duration(static_cast<std::int64_t>((bits_ns + bps - 1) / bps));
}

}  // namespace holoslice
