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

#include "giffel/gif.h"

#include <random>

#include "doctest.h"

using namespace giffel;

namespace {

Palette bw_palette() {
  Palette p;
  p.colors = {{0, 0, 0}, {1, 1, 1}};
  return p;
}

Palette random_byte_palette(std::mt19937_64& rng, int np) {
  std::uniform_int_distribution<int> dist(0, 255);
  Palette p;
  for (int j = 0; j < np; ++j) {
    p.colors.push_back({dist(rng) / 255.0, dist(rng) / 255.0, dist(rng) / 255.0});
  }
  return p;
}

IndexedImage random_indexed(std::mt19937_64& rng, int max_dim, int np) {
  IndexedImage img;
  img.height = 1 + static_cast<int>(rng() % max_dim);
  img.width = 1 + static_cast<int>(rng() % max_dim);
  img.palette = random_byte_palette(rng, np);
  img.indices.resize(static_cast<size_t>(img.height) * img.width);
  std::uniform_int_distribution<int> idx(0, np - 1);
  for (uint8_t& v : img.indices) v = static_cast<uint8_t>(idx(rng));
  return img;
}

}  // namespace

TEST_SUITE("gifio") {

TEST_CASE("lzw single index golden bytes") {
  // clear(4), 0, end(5) at 3 bits, LSB-first: 0x44 0x01
  const std::vector<uint8_t> out = lzw_encode({0}, 2);
  CHECK(out == std::vector<uint8_t>{0x44, 0x01});
  CHECK(lzw_decode(out, 2) == std::vector<uint8_t>{0});
}

TEST_CASE("lzw empty stream") {
  const std::vector<uint8_t> out = lzw_encode({}, 2);
  CHECK(lzw_decode(out, 2).empty());
}

TEST_CASE("lzw KwKwK case") {
  const std::vector<uint8_t> data = {1, 1, 1};
  CHECK(lzw_decode(lzw_encode(data, 2), 2) == data);
}

TEST_CASE("lzw round-trip over random streams") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int mcs = 2 + static_cast<int>(rng() % 7);
    std::uniform_int_distribution<int> sym(0, (1 << mcs) - 1);
    std::uniform_int_distribution<int> len(0, 5000);
    std::vector<uint8_t> data(len(rng));
    for (uint8_t& v : data) v = static_cast<uint8_t>(sym(rng));
    CHECK(lzw_decode(lzw_encode(data, mcs), mcs) == data);
  }
}

TEST_CASE("lzw round-trip past dictionary resets") {
  // enough random 8-bit symbols to fill the 4096-entry table repeatedly
  std::mt19937_64 rng(100);
  std::uniform_int_distribution<int> sym(0, 255);
  std::vector<uint8_t> data(60000);
  for (uint8_t& v : data) v = static_cast<uint8_t>(sym(rng));
  CHECK(lzw_decode(lzw_encode(data, 8), 8) == data);
}

TEST_CASE("lzw compresses runs") {
  const std::vector<uint8_t> data(10000, 3);
  const std::vector<uint8_t> out = lzw_encode(data, 2);
  CHECK(out.size() < data.size());
  CHECK(lzw_decode(out, 2) == data);
}

TEST_CASE("lzw rejects out-of-range symbols") {
  CHECK_THROWS_AS(lzw_encode({7}, 2), CodecError);
  CHECK_THROWS_AS(lzw_encode({0}, 1), CodecError);
  CHECK_THROWS_AS(lzw_encode({0}, 9), CodecError);
}

TEST_CASE("lzw decode rejects truncated streams") {
  std::vector<uint8_t> good = lzw_encode({0, 1, 2, 3, 0, 1, 2, 3}, 2);
  std::vector<uint8_t> missing_end(good.begin(), good.end() - 1);
  CHECK_THROWS_AS(lzw_decode(missing_end, 2), CodecError);
}

TEST_CASE("lzw decode rejects codes beyond the next free slot") {
  // mcs=2: clear(4), literal 0, code 7 (> next free slot 6): 0xC4 0x01
  const std::vector<uint8_t> bad = {0xC4, 0x01};
  CHECK_THROWS_AS(lzw_decode(bad, 2), CodecError);
}

TEST_CASE("write_gif golden bytes for 1x1 two-color image") {
  IndexedImage img;
  img.height = 1;
  img.width = 1;
  img.indices = {0};
  img.palette = bw_palette();
  const GifBytes bytes = write_gif(img);
  const GifBytes expect = {
      0x47, 0x49, 0x46, 0x38, 0x39, 0x61,        // signature
      0x01, 0x00, 0x01, 0x00, 0xF0, 0x00, 0x00,  // logical screen descriptor
      0x00, 0x00, 0x00, 0xFF, 0xFF, 0xFF,        // 2-entry color table
      0x2C, 0x00, 0x00, 0x00, 0x00, 0x01, 0x00, 0x01, 0x00, 0x00,  // descriptor
      0x02,                                      // min code size
      0x02, 0x44, 0x01,                          // one data sub-block
      0x00,                                      // block terminator
      0x3B,                                      // trailer
  };
  CHECK(bytes == expect);
  CHECK(bytes.size() <= 40);
  const IndexedImage back = read_gif(bytes);
  CHECK(back.indices == img.indices);
}

TEST_CASE("write_gif is deterministic") {
  std::mt19937_64 rng(101);
  const IndexedImage img = random_indexed(rng, 32, 16);
  CHECK(write_gif(img) == write_gif(img));
}

TEST_CASE("gif signature bytes") {
  IndexedImage img;
  img.height = 2;
  img.width = 2;
  img.indices = {0, 1, 1, 0};
  img.palette = bw_palette();
  const GifBytes bytes = write_gif(img);
  const uint8_t sig[6] = {0x47, 0x49, 0x46, 0x38, 0x39, 0x61};
  for (int i = 0; i < 6; ++i) CHECK(bytes[i] == sig[i]);
  CHECK(bytes.back() == 0x3B);
}

TEST_CASE("gif round-trip over random images including odd palette sizes") {
  std::mt19937_64 rng(102);
  const int sizes[] = {2, 3, 4, 5, 16, 100, 256};
  for (int trial = 0; trial < 60; ++trial) {
    const IndexedImage img = random_indexed(rng, 48, sizes[trial % 7]);
    const IndexedImage back = read_gif(write_gif(img));
    CHECK(back.height == img.height);
    CHECK(back.width == img.width);
    CHECK(back.indices == img.indices);
    // palette equal up to the power-of-two padded tail
    REQUIRE(back.palette.size() >= img.palette.size());
    for (int j = 0; j < img.palette.size(); ++j) {
      CHECK(back.palette.colors[j] == img.palette.colors[j]);
    }
    for (int j = img.palette.size(); j < back.palette.size(); ++j) {
      CHECK(back.palette.colors[j] == Rgb{0, 0, 0});
    }
  }
}

TEST_CASE("write_gif rejects oversized dimensions") {
  IndexedImage img;
  img.height = 1;
  img.width = 65536;
  img.indices.assign(65536, 0);
  img.palette = bw_palette();
  CHECK_THROWS_AS(write_gif(img), SizeError);
}

TEST_CASE("read_gif rejects files missing the trailer") {
  IndexedImage img;
  img.height = 2;
  img.width = 2;
  img.indices = {0, 1, 0, 1};
  img.palette = bw_palette();
  GifBytes bytes = write_gif(img);
  bytes.pop_back();
  CHECK_THROWS_AS(read_gif(bytes), CodecError);
}

TEST_CASE("read_gif rejects bad signatures") {
  GifBytes bytes = {'N', 'O', 'T', 'G', 'I', 'F', 0, 0};
  CHECK_THROWS_AS(read_gif(bytes), CodecError);
}

TEST_CASE("read_gif rejects interlaced and local-color-table flags") {
  IndexedImage img;
  img.height = 2;
  img.width = 2;
  img.indices = {0, 1, 0, 1};
  img.palette = bw_palette();
  const GifBytes bytes = write_gif(img);
  // image descriptor starts after 6+7+6 bytes; packed field is its 10th byte
  const size_t packed_pos = 6 + 7 + 6 + 9;
  REQUIRE(bytes[6 + 7 + 6] == 0x2C);

  GifBytes interlaced = bytes;
  interlaced[packed_pos] |= 0x40;
  CHECK_THROWS_AS(read_gif(interlaced), UnsupportedError);

  GifBytes local_table = bytes;
  local_table[packed_pos] |= 0x80;
  CHECK_THROWS_AS(read_gif(local_table), UnsupportedError);
}

TEST_CASE("read_gif rejects animated files") {
  IndexedImage img;
  img.height = 2;
  img.width = 2;
  img.indices = {0, 1, 0, 1};
  img.palette = bw_palette();
  const GifBytes bytes = write_gif(img);
  // splice the image block in twice
  const size_t frame_begin = 6 + 7 + 6;
  const size_t frame_end = bytes.size() - 1;  // everything before the trailer
  GifBytes doubled(bytes.begin(), bytes.begin() + frame_end);
  doubled.insert(doubled.end(), bytes.begin() + frame_begin, bytes.begin() + frame_end);
  doubled.push_back(0x3B);
  CHECK_THROWS_AS(read_gif(doubled), UnsupportedError);
}

TEST_CASE("read_gif skips extension blocks") {
  IndexedImage img;
  img.height = 2;
  img.width = 2;
  img.indices = {3, 1, 0, 2};
  std::mt19937_64 rng(103);
  img.palette = random_byte_palette(rng, 4);
  GifBytes bytes = write_gif(img);
  // graphic control extension inserted before the image descriptor
  const GifBytes gce = {0x21, 0xF9, 0x04, 0x00, 0x00, 0x00, 0x00, 0x00};
  bytes.insert(bytes.begin() + 6 + 7 + 4 * 3, gce.begin(), gce.end());
  const IndexedImage back = read_gif(bytes);
  CHECK(back.indices == img.indices);
}

TEST_CASE("reference encoder fixture decodes to the expected pattern") {
  const IndexedImage img =
      read_gif_file(std::string(GIFFEL_ASSET_DIR) + "/golden/ref_4x4.gif");
  const std::vector<uint8_t> expect = {0, 1, 2, 3, 3, 2, 1, 0,
                                       1, 1, 2, 2, 0, 3, 0, 3};
  CHECK(img.height == 4);
  CHECK(img.width == 4);
  CHECK(img.indices == expect);
  CHECK(img.palette.colors[0] == Rgb{1, 0, 0});
  CHECK(img.palette.colors[1] == Rgb{0, 1, 0});
  CHECK(img.palette.colors[2] == Rgb{0, 0, 1});
  CHECK(img.palette.colors[3] == Rgb{1, 1, 0});
}

}  // TEST_SUITE
