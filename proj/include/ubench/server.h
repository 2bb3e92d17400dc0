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

#ifndef UBENCH_SERVER_H_
#define UBENCH_SERVER_H_

#include <functional>
#include <string>

#include "ubench/api.h"

namespace ubench {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Called with the bound port once requests can be accepted.
  std::function<void(int)> on_listening;
};

// Serves `api` over HTTP until SIGINT or SIGTERM. Throws on bind failure.
void Serve(const ApiService& api, const ServeOptions& options);

}  // namespace ubench

#endif  // UBENCH_SERVER_H_
