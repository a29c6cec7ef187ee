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

#ifndef HOLOSLICE_COMMON_ERRORS_HPP_
#define HOLOSLICE_COMMON_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace holoslice {

// Stable error taxonomy. The numeric values are mirrored by hs_status in the
// C API header, so append only.
enum class ErrorCode : int {
  kOk = 0,
  kParse = 1,
  kInvalidArgument = 2,
  kDuplicateNode = 3,
  kDanglingEndpoint = 4,
  kInvalidCapacity = 5,
  kUnknownNode = 6,
  kNoPath = 7,
  kInfeasible = 8,
  kDuplicateEntry = 9,
  kUnknownExtern = 10,
  kInsufficientCpu = 11,
  kUnknownProgram = 12,
  kDuplicateProgram = 13,
  kNoFeasiblePlacement = 14,
  kUnknownSlice = 15,
  kSliceNotActive = 16,
  kInvalidTarget = 17,
  kBackendUnavailable = 18,
  kConfig = 19,
  kNoPackets = 20,
  kInsufficientPackets = 21,
  kZeroSpan = 22,
  kWorkloadMismatch = 23,
  kRouteMismatch = 24,
  kIo = 25,
  kInternal = 26,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace holoslice

#endif  // HOLOSLICE_COMMON_ERRORS_HPP_
