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

#ifndef HOLOSLICE_API_SERVICE_HPP_
#define HOLOSLICE_API_SERVICE_HPP_

#include <memory>
#include <string>
#include <thread>

#include "control/slice_engine.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace holoslice::api {

inline constexpr const char* kAddrEnv = "HOLOSLICE_ADDR";
inline constexpr const char* kDefaultAddr = "127.0.0.1:8080";

// HTTP status for an engine error code.
int http_status(ErrorCode code);

// {"error": {"code": "...", "message": "..."}}
nlohmann::json error_body(ErrorCode code, const std::string& message);

struct Endpoint {
  std::string host;
  int port = 0;
};

// "host:port" or ":port"; throws kInvalidArgument.
Endpoint parse_endpoint(const std::string& addr);

// JSON-over-HTTP slice management:
//   POST   /slices        create      -> 201 + slice record
//   GET    /slices        list
//   GET    /slices/{id}   read
//   PATCH  /slices/{id}   update
//   DELETE /slices/{id}   decommission
//   GET    /stats         monitor snapshot
class SliceService {
 public:
  explicit SliceService(control::SliceEngine& engine);
  ~SliceService();

  SliceService(const SliceService&) = delete;
  SliceService& operator=(const SliceService&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port; throws kIo when binding fails.
  int start(const std::string& host, int port);
  void stop();
  // Blocks until the listener thread exits.
  void wait();
  int port() const { return port_; }

 private:
  void routes();

  control::SliceEngine& engine_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace holoslice::api

#endif  // HOLOSLICE_API_SERVICE_HPP_
