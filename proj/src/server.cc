// Copyright 2026 The ubench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ubench/server.h"

#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <atomic>
#include <thread>

#include "httplib.h"
#include "ubench/error.h"
#include "ubench/log.h"

namespace ubench {
namespace {

ApiRequest ToApiRequest(const httplib::Request& req) {
  ApiRequest out;
  out.method = req.method;
  out.path = req.path;
  for (const auto& [k, v] : req.params) out.query.emplace(k, v);
  out.body = req.body;
  return out;
}

}  // namespace

void Serve(const ApiService& api, const ServeOptions& options) {
  httplib::Server server;
  auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = api.Handle(ToApiRequest(req));
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get(R"(/.*)", handler);
  server.Post(R"(/.*)", handler);

  // Route SIGINT/SIGTERM to a waiter thread that stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  int port = options.port;
  bool bound = port == 0
                   ? (port = server.bind_to_any_port(options.host)) > 0
                   : server.bind_to_port(options.host, port);
  if (!bound) {
    pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
    throw Error("cannot bind " + options.host + ":" +
                std::to_string(options.port));
  }
  std::atomic<bool> stopping{false};
  std::thread waiter([&server, &stopping, signals]() {
    int sig = 0;
    sigwait(&signals, &sig);
    if (stopping) return;
    LogInfo("signal " + std::to_string(sig) + ", shutting down");
    stopping = true;
    server.stop();
  });
  LogInfo("listening on " + options.host + ":" + std::to_string(port));
  std::thread ready;
  if (options.on_listening) {
    ready = std::thread([&server, &options, port]() {
      server.wait_until_ready();
      if (server.is_running()) options.on_listening(port);
    });
  }
  bool ok = server.listen_after_bind();
  if (ready.joinable()) ready.join();
  if (!stopping.exchange(true)) {
    // The server ended on its own; wake the waiter.
    pthread_kill(waiter.native_handle(), SIGTERM);
    ok = false;
  }
  waiter.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  if (!ok) throw Error("server stopped unexpectedly");
}

}  // namespace ubench
