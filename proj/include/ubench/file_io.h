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

#ifndef UBENCH_FILE_IO_H_
#define UBENCH_FILE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace ubench {

std::string ReadFile(const std::filesystem::path& path);

// Writes through a temporary file and rename. Returns false and leaves the
// file untouched when it already holds exactly `contents`.
bool WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

}  // namespace ubench

#endif  // UBENCH_FILE_IO_H_
