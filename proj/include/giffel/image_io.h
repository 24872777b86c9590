// Copyright 2026 The Giffel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GIFFEL_IMAGE_IO_H_
#define GIFFEL_IMAGE_IO_H_

#include <string>

#include "giffel/image.h"

namespace giffel {

// Binary PPM (P6, maxval 255). The canonical fixture format.
FloatImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const FloatImage& img);

// 8-bit PNG. Palette/gray inputs are expanded to RGB, alpha is dropped.
FloatImage read_png(const std::string& path);
void write_png(const std::string& path, const FloatImage& img);

// Dispatch on extension (.ppm/.png, case-insensitive).
FloatImage read_image(const std::string& path);

}  // namespace giffel

#endif  // GIFFEL_IMAGE_IO_H_
