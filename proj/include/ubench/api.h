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

#ifndef UBENCH_API_H_
#define UBENCH_API_H_

#include <map>
#include <memory>
#include <string>

#include "ubench/advisor.h"
#include "ubench/ranker.h"
#include "ubench/workspace.h"

namespace ubench {

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;    // without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Read-only JSON API over one workspace. Every response is
// {"status": "ok"|"error", "registry_digest": ..., "payload"|"error": ...}.
// Handle is const and safe to call from many threads.
class ApiService {
 public:
  ApiService(std::shared_ptr<const Workspace> workspace,
             std::map<LabelKind, RankerModel> rankers,
             std::string default_baseline);

  ApiResponse Handle(const ApiRequest& request) const;

 private:
  std::shared_ptr<const Workspace> workspace_;
  std::map<LabelKind, RankerModel> rankers_;
  std::string default_baseline_;
};

}  // namespace ubench

#endif  // UBENCH_API_H_
