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

#include "cloudsel/http_server.hpp"

#include <httplib.h>

#include "cloudsel/errors.hpp"

namespace cloudsel::api {

struct HttpServer::Impl {
  Service& service;
  std::string host;
  int requested_port;
  int bound_port = -1;
  httplib::Server server;

  Impl(Service& s, std::string h, int p) : service(s), host(std::move(h)), requested_port(p) {
    // httplib also sets SO_REUSEPORT, which would let a second server share a taken port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
  }
};

namespace {

QueryParams to_params(const httplib::Request& req) {
  QueryParams out;
  for (const auto& [k, v] : req.params) out.emplace_back(k, v);
  return out;
}

Format format_of(const httplib::Request& req) {
  return req.has_param("media_type") && req.get_param_value("media_type") == "xml" ? Format::Xml : Format::Json;
}

}  // namespace

HttpServer::HttpServer(Service& service, std::string host, int port)
    : impl_(std::make_unique<Impl>(service, std::move(host), port)) {
  Impl& self = *impl_;
  self.server.Get(R"((?:/[^/]+)*/api/cost/(storage|compute|combined))",
                  [&self](const httplib::Request& req, httplib::Response& res) {
                    const Endpoint endpoint = *parse_endpoint(req.matches[1].str());
                    ApiResponse r = self.service.cost(endpoint, to_params(req));
                    res.status = r.status;
                    res.set_content(r.body, r.content_type.c_str());
                  });
  self.server.Get(R"((?:/[^/]+)*/api/recommendation/([^/]+))",
                  [&self](const httplib::Request& req, httplib::Response& res) {
                    ApiResponse r = self.service.recommendation(req.matches[1].str(), format_of(req));
                    res.status = r.status;
                    res.set_content(r.body, r.content_type.c_str());
                  });
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::bind() {
  if (impl_->requested_port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(impl_->host);
  } else if (impl_->server.bind_to_port(impl_->host, impl_->requested_port)) {
    impl_->bound_port = impl_->requested_port;
  }
  if (impl_->bound_port <= 0) {
    impl_->bound_port = -1;
    throw IoError("cannot listen on " + impl_->host + ":" + std::to_string(impl_->requested_port));
  }
}

int HttpServer::port() const { return impl_->bound_port; }

void HttpServer::run() {
  if (impl_->bound_port < 0) throw IoError("server is not bound");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace cloudsel::api
