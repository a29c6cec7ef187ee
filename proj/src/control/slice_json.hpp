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

#ifndef HOLOSLICE_CONTROL_SLICE_JSON_HPP_
#define HOLOSLICE_CONTROL_SLICE_JSON_HPP_

#include "control/slice_engine.hpp"
#include "json.hpp"

namespace holoslice::control {

inline constexpr const char* kSliceSchema = "holoslice.slice/v1";

// Throws kParse on malformed documents and kInvalidArgument on values that
// break a request invariant (e.g. bandwidth <= 0).
SliceRequest slice_request_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SliceRequest& request);

SliceUpdate slice_update_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const SliceRecord& record);

}  // namespace holoslice::control

#endif  // HOLOSLICE_CONTROL_SLICE_JSON_HPP_
