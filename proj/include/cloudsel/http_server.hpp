/*
 * Copyright 2026 The cloudsel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <memory>
#include <string>

#include "cloudsel/api.hpp"

namespace cloudsel::api {

/// HTTP front end for a Service. GET only:
///   /api/cost/storage, /api/cost/compute, /api/cost/combined
///   /api/recommendation/{result_id}
/// Any path prefix before /api is accepted (e.g. /cloud_demo_1_1/api/...).
class HttpServer {
 public:
  HttpServer(Service& service, std::string host, int port);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket. Throws IoError when the address is unusable
  /// or the port is taken. Port 0 picks a free port.
  void bind();
  int port() const;
  /// Serves until stop(). bind() must have succeeded.
  void run();
  /// Safe from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cloudsel::api
