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

#ifndef UBENCH_PNG_IO_H_
#define UBENCH_PNG_IO_H_

#include <filesystem>

#include "ubench/mask.h"

namespace ubench {

// 8-bit grayscale PNG. Color input is converted to gray on read.
Mask ReadMaskPng(const std::filesystem::path& path);
GrayImage ReadGrayPng(const std::filesystem::path& path);

void WriteMaskPng(const std::filesystem::path& path, const Mask& mask);
void WriteGrayPng(const std::filesystem::path& path, const GrayImage& image);

}  // namespace ubench

#endif  // UBENCH_PNG_IO_H_
