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
//
// GIF89a container with the GIF flavor of LZW. Single frame, global color
// table, no extensions, no interlacing. Output bytes are deterministic for a
// given IndexedImage, which the golden tests rely on.

#ifndef GIFFEL_GIF_H_
#define GIFFEL_GIF_H_

#include <cstdint>
#include <string>
#include <vector>

#include "giffel/palette.h"

namespace giffel {

using GifBytes = std::vector<uint8_t>;

// GIF-variant LZW over raw index symbols. Initial code width is
// min_code_size+1; clear = 2^mcs, end = clear+1; a clear code is always
// emitted first and again whenever the dictionary reaches 4096 entries.
// Bits are packed LSB-first. Sub-block chunking is the container's job.
std::vector<uint8_t> lzw_encode(const std::vector<uint8_t>& indices,
                                int min_code_size);

// Inverse of lzw_encode. Also accepts streams that defer the clear code
// past a full dictionary. Malformed input (code beyond the next free slot,
// missing end code) raises CodecError.
std::vector<uint8_t> lzw_decode(const std::vector<uint8_t>& bytes,
                                int min_code_size);

// Serializes header, logical screen descriptor, global color table (padded
// with black to the next power of two >= palette size), one image
// descriptor, LZW sub-blocks, trailer.
GifBytes write_gif(const IndexedImage& img);

// Parses what write_gif produces, plus reference-encoder output: GIF87a or
// GIF89a signature, extensions skipped. Interlaced, local-color-table, or
// multi-frame inputs raise UnsupportedError; structural damage raises
// CodecError.
IndexedImage read_gif(const GifBytes& bytes);

void write_gif_file(const std::string& path, const IndexedImage& img);
IndexedImage read_gif_file(const std::string& path);

}  // namespace giffel

#endif  // GIFFEL_GIF_H_
