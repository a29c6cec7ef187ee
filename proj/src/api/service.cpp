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

#include "api/service.hpp"

#include "control/slice_json.hpp"
#include "httplib.h"

namespace holoslice::api {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return 200;
    case ErrorCode::kParse:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnknownNode:
    case ErrorCode::kUnknownProgram:
    case ErrorCode::kInvalidTarget:
      return 400;
    case ErrorCode::kUnknownSlice:
      return 404;
    case ErrorCode::kInfeasible:
    case ErrorCode::kNoPath:
    case ErrorCode::kNoFeasiblePlacement:
    case ErrorCode::kInsufficientCpu:
    case ErrorCode::kSliceNotActive:
    case ErrorCode::kDuplicateEntry:
      return 409;
    case ErrorCode::kBackendUnavailable:
      return 503;
    default:
      return 500;
  }
}

json error_body(ErrorCode code, const std::string& message) {
  return json{{"error", {{"code", to_string(code)}, {"message", message}}}};
}

Endpoint parse_endpoint(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "address '" + addr + "' must be host:port");
  }
  Endpoint ep;
  ep.host = colon == 0 ? "127.0.0.1" : addr.substr(0, colon);
  try {
    std::size_t used = 0;
    ep.port = std::stoi(addr.substr(colon + 1), &used);
    if (used != addr.size() - colon - 1) throw std::invalid_argument("port");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "bad port in '" + addr + "'");
  }
  if (ep.port < 0 || ep.port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "port out of range in '" + addr + "'");
  }
  return ep;
}

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, const Error& e) {
  reply(res, http_status(e.code()), error_body(e.code(), e.what()));
}

// Wraps a handler so every failure turns into an error document.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      reply_error(res, e);
    } catch (const json::exception& e) {
      reply_error(res, Error(ErrorCode::kParse, e.what()));
    } catch (const std::exception& e) {
      reply_error(res, Error(ErrorCode::kInternal, e.what()));
    }
  };
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("request body: ") + e.what());
  }
}

control::SliceId slice_id(const httplib::Request& req) {
  const std::string& text = req.matches[1];
  try {
    std::size_t used = 0;
    const unsigned long id = std::stoul(text, &used);
    if (used == text.size() && id <= 0xFFFFFFFFul) {
      return static_cast<control::SliceId>(id);
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kUnknownSlice, "no slice '" + text + "'");
}

}  // namespace

SliceService::SliceService(control::SliceEngine& engine)
    : engine_(engine), server_(std::make_unique<httplib::Server>()) {
  routes();
}

SliceService::~SliceService() { stop(); }

void SliceService::routes() {
  auto& engine = engine_;
  server_->Post("/slices", guarded([&engine](const httplib::Request& req,
                                             httplib::Response& res) {
    auto request = control::slice_request_from_json(parse_body(req));
    reply(res, 201, control::to_json(engine.create_slice(request)));
  }));
  server_->Get("/slices", guarded([&engine](const httplib::Request&,
                                            httplib::Response& res) {
    json list = json::array();
    for (const auto& rec : engine.list_slices()) list.push_back(control::to_json(rec));
    reply(res, 200, json{{"slices", list}});
  }));
  server_->Get(R"(/slices/([^/]+))",
               guarded([&engine](const httplib::Request& req,
                                 httplib::Response& res) {
                 const auto id = slice_id(req);
                 auto rec = engine.get_slice(id);
                 if (!rec) {
                   throw Error(ErrorCode::kUnknownSlice,
                               "no slice " + std::to_string(id));
                 }
                 reply(res, 200, control::to_json(*rec));
               }));
  server_->Patch(R"(/slices/([^/]+))",
                 guarded([&engine](const httplib::Request& req,
                                   httplib::Response& res) {
                   const auto id = slice_id(req);
                   auto update = control::slice_update_from_json(parse_body(req));
                   reply(res, 200, control::to_json(engine.update_slice(id, update)));
                 }));
  server_->Delete(R"(/slices/([^/]+))",
                  guarded([&engine](const httplib::Request& req,
                                    httplib::Response& res) {
                    reply(res, 200,
                          control::to_json(engine.delete_slice(slice_id(req))));
                  }));
  server_->Get("/stats", guarded([&engine](const httplib::Request&,
                                           httplib::Response& res) {
    reply(res, 200, control::to_json(engine.collect_stats()));
  }));
}

int SliceService::start(const std::string& host, int port) {
  if (thread_.joinable()) {
    throw Error(ErrorCode::kConfig, "service already started");
  }
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) {
    throw Error(ErrorCode::kIo,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void SliceService::stop() {
  if (server_) server_->stop();
  wait();
}

void SliceService::wait() {
  if (thread_.joinable()) thread_.join();
}

}  // namespace holoslice::api
