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

#include "ubench/png_io.h"

#include <png.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "ubench/error.h"

namespace ubench {
namespace {

std::vector<std::uint8_t> ReadGray8(const std::filesystem::path& path, int* w,
                                    int* h) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error("cannot read PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error("cannot decode PNG " + path.string() + ": " + msg);
  }
  *w = static_cast<int>(image.width);
  *h = static_cast<int>(image.height);
  return buf;
}

void WriteGray8(const std::filesystem::path& path, int w, int h,
                const std::vector<std::uint8_t>& pixels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0,
                               nullptr)) {
    throw Error("cannot write PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace

Mask ReadMaskPng(const std::filesystem::path& path) {
  Mask m;
  m.labels = ReadGray8(path, &m.width, &m.height);
  return m;
}

GrayImage ReadGrayPng(const std::filesystem::path& path) {
  int w = 0, h = 0;
  auto px = ReadGray8(path, &w, &h);
  GrayImage img(w, h);
  for (std::size_t i = 0; i < px.size(); ++i) img.intensity[i] = px[i];
  return img;
}

void WriteMaskPng(const std::filesystem::path& path, const Mask& mask) {
  WriteGray8(path, mask.width, mask.height, mask.labels);
}

void WriteGrayPng(const std::filesystem::path& path, const GrayImage& image) {
  std::vector<std::uint8_t> px(image.intensity.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    double v = std::round(image.intensity[i]);
    px[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
  }
  WriteGray8(path, image.width, image.height, px);
}

}  // namespace ubench
