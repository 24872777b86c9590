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

#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace giffel {

namespace {

constexpr int kMaxCodeWidth = 12;
constexpr int kMaxDictSize = 1 << kMaxCodeWidth;  // 4096

class BitWriter {
 public:
  void put(uint32_t code, int bits) {
    acc_ |= static_cast<uint64_t>(code) << filled_;
    filled_ += bits;
    while (filled_ >= 8) {
      out_.push_back(static_cast<uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      filled_ -= 8;
    }
  }
  std::vector<uint8_t> finish() {
    if (filled_ > 0) {
      out_.push_back(static_cast<uint8_t>(acc_ & 0xFF));
      acc_ = 0;
      filled_ = 0;
    }
    return std::move(out_);
  }

 private:
  std::vector<uint8_t> out_;
  uint64_t acc_ = 0;
  int filled_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}
  // Returns false when the stream is exhausted.
  bool get(int bits, uint32_t* code) {
    while (filled_ < bits) {
      if (pos_ >= bytes_.size()) return false;
      acc_ |= static_cast<uint64_t>(bytes_[pos_++]) << filled_;
      filled_ += 8;
    }
    *code = static_cast<uint32_t>(acc_ & ((1u << bits) - 1));
    acc_ >>= bits;
    filled_ -= bits;
    return true;
  }

 private:
  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
  uint64_t acc_ = 0;
  int filled_ = 0;
};

void put_u16(GifBytes& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
}

int padded_table_bits(int palette_size) {
  int bits = 1;  // GIF color tables hold at least 2 entries
  while ((1 << bits) < palette_size) ++bits;
  return bits;
}

uint8_t color_byte(double v) {
  return static_cast<uint8_t>(std::lround(clamp01(v) * 255.0));
}

}  // namespace

std::vector<uint8_t> lzw_encode(const std::vector<uint8_t>& indices,
                                int min_code_size) {
  if (min_code_size < 2 || min_code_size > 8) {
    throw CodecError("lzw: min_code_size out of [2,8]");
  }
  const uint32_t clear_code = 1u << min_code_size;
  const uint32_t end_code = clear_code + 1;
  const uint32_t symbol_limit = clear_code;
  for (uint8_t s : indices) {
    if (s >= symbol_limit) throw CodecError("lzw: index out of range for code size");
  }

  BitWriter bw;
  // The decoder defines one dictionary entry after every data code it reads
  // except the first after a clear, and widens when its next free slot hits
  // the width limit. Simulating that bookkeeping here (instead of deriving
  // the width from our own insert counter) keeps both sides in lockstep,
  // including the corner where the final code lands on a width boundary.
  int width = min_code_size + 1;
  uint32_t decoder_free = end_code + 1;
  bool first_after_clear = true;
  auto emitted_data_code = [&] {
    if (first_after_clear) {
      first_after_clear = false;
      return;
    }
    if (decoder_free < kMaxDictSize) {
      ++decoder_free;
      if (decoder_free == (1u << width) && width < kMaxCodeWidth) ++width;
    }
  };

  uint32_t next_free = end_code + 1;
  // (prefix code << 8 | symbol) -> dictionary code
  std::unordered_map<uint32_t, uint32_t> dict;
  dict.reserve(kMaxDictSize);

  bw.put(clear_code, width);
  if (indices.empty()) {
    bw.put(end_code, width);
    return bw.finish();
  }

  uint32_t prefix = indices[0];
  for (size_t i = 1; i < indices.size(); ++i) {
    const uint32_t sym = indices[i];
    const uint32_t key = (prefix << 8) | sym;
    auto it = dict.find(key);
    if (it != dict.end()) {
      prefix = it->second;
      continue;
    }
    bw.put(prefix, width);
    emitted_data_code();
    dict.emplace(key, next_free++);
    if (next_free == kMaxDictSize) {
      bw.put(clear_code, width);
      width = min_code_size + 1;
      decoder_free = end_code + 1;
      first_after_clear = true;
      next_free = end_code + 1;
      dict.clear();
    }
    prefix = sym;
  }
  bw.put(prefix, width);
  emitted_data_code();
  bw.put(end_code, width);
  return bw.finish();
}

std::vector<uint8_t> lzw_decode(const std::vector<uint8_t>& bytes,
                                int min_code_size) {
  if (min_code_size < 2 || min_code_size > 8) {
    throw CodecError("lzw: min_code_size out of [2,8]");
  }
  const uint32_t clear_code = 1u << min_code_size;
  const uint32_t end_code = clear_code + 1;

  BitReader br(bytes);
  std::vector<uint8_t> out;

  // Dictionary as (prefix code, appended byte) pairs; literals implicit.
  std::vector<uint32_t> prefix(kMaxDictSize, 0);
  std::vector<uint8_t> append(kMaxDictSize, 0);
  uint32_t next_free = end_code + 1;
  int width = min_code_size + 1;
  bool have_prev = false;
  uint32_t prev = 0;
  std::vector<uint8_t> entry;

  auto expand = [&](uint32_t code) {
    entry.clear();
    while (code > end_code) {
      entry.push_back(append[code]);
      code = prefix[code];
    }
    entry.push_back(static_cast<uint8_t>(code));
    out.insert(out.end(), entry.rbegin(), entry.rend());
    return entry.back();  // first symbol of the expansion
  };

  uint32_t code;
  while (true) {
    if (!br.get(width, &code)) throw CodecError("lzw: missing end code");
    if (code == clear_code) {
      next_free = end_code + 1;
      width = min_code_size + 1;
      have_prev = false;
      continue;
    }
    if (code == end_code) break;
    if (!have_prev) {
      if (code >= clear_code) throw CodecError("lzw: first code not a literal");
      out.push_back(static_cast<uint8_t>(code));
      prev = code;
      have_prev = true;
      continue;
    }
    uint8_t first_sym;
    if (code < next_free) {
      first_sym = expand(code);
    } else if (code == next_free && next_free < kMaxDictSize) {
      // KwKwK: the code being defined by this very step.
      const uint32_t tmp = prev;
      entry.clear();
      uint32_t walk = tmp;
      while (walk > end_code) {
        entry.push_back(append[walk]);
        walk = prefix[walk];
      }
      entry.push_back(static_cast<uint8_t>(walk));
      first_sym = entry.back();
      out.insert(out.end(), entry.rbegin(), entry.rend());
      out.push_back(first_sym);
    } else {
      throw CodecError("lzw: code beyond dictionary");
    }
    if (next_free < kMaxDictSize) {
      prefix[next_free] = prev;
      append[next_free] = first_sym;
      ++next_free;
      if (next_free == (1u << width) && width < kMaxCodeWidth) ++width;
    }
    // When the dictionary is full we keep decoding without adds until the
    // encoder sends a clear (deferred-clear streams).
    prev = code;
  }
  return out;
}

GifBytes write_gif(const IndexedImage& img) {
  img.validate();
  if (img.width > 65535 || img.height > 65535) {
    throw SizeError("gif: dimensions exceed 65535");
  }
  const int table_bits = padded_table_bits(img.palette.size());
  const int table_size = 1 << table_bits;
  const int min_code_size = std::max(2, table_bits);

  GifBytes out;
  out.reserve(64 + img.indices.size() / 2);
  const char sig[6] = {'G', 'I', 'F', '8', '9', 'a'};
  out.insert(out.end(), sig, sig + 6);

  // Logical screen descriptor.
  put_u16(out, img.width);
  put_u16(out, img.height);
  // global color table, 8 bits/primary, unsorted, size 2^(bits)
  out.push_back(static_cast<uint8_t>(0x80 | (7 << 4) | (table_bits - 1)));
  out.push_back(0);  // background color index
  out.push_back(0);  // pixel aspect ratio

  for (int j = 0; j < table_size; ++j) {
    if (j < img.palette.size()) {
      for (int c = 0; c < 3; ++c) out.push_back(color_byte(img.palette.colors[j][c]));
    } else {
      out.insert(out.end(), {0, 0, 0});  // black padding, unreachable
    }
  }

  // Image descriptor at origin, no local table, no interlace.
  out.push_back(0x2C);
  put_u16(out, 0);
  put_u16(out, 0);
  put_u16(out, img.width);
  put_u16(out, img.height);
  out.push_back(0x00);

  out.push_back(static_cast<uint8_t>(min_code_size));
  const std::vector<uint8_t> lzw = lzw_encode(img.indices, min_code_size);
  for (size_t pos = 0; pos < lzw.size(); pos += 255) {
    const size_t len = std::min<size_t>(255, lzw.size() - pos);
    out.push_back(static_cast<uint8_t>(len));
    out.insert(out.end(), lzw.begin() + pos, lzw.begin() + pos + len);
  }
  out.push_back(0x00);  // block terminator
  out.push_back(0x3B);  // trailer
  return out;
}

namespace {

class ByteCursor {
 public:
  explicit ByteCursor(const GifBytes& b) : bytes_(b) {}
  uint8_t u8() {
    if (pos_ >= bytes_.size()) throw CodecError("gif: truncated file");
    return bytes_[pos_++];
  }
  uint32_t u16() {
    const uint32_t lo = u8();
    return lo | (static_cast<uint32_t>(u8()) << 8);
  }
  void skip(size_t n) {
    if (pos_ + n > bytes_.size()) throw CodecError("gif: truncated file");
    pos_ += n;
  }
  void read(uint8_t* dst, size_t n) {
    if (pos_ + n > bytes_.size()) throw CodecError("gif: truncated file");
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }

 private:
  const GifBytes& bytes_;
  size_t pos_ = 0;
};

}  // namespace

IndexedImage read_gif(const GifBytes& bytes) {
  ByteCursor cur(bytes);
  uint8_t sig[6];
  cur.read(sig, 6);
  if (std::memcmp(sig, "GIF89a", 6) != 0 && std::memcmp(sig, "GIF87a", 6) != 0) {
    throw CodecError("gif: bad signature");
  }
  const uint32_t screen_w = cur.u16();
  const uint32_t screen_h = cur.u16();
  (void)screen_w;
  (void)screen_h;
  const uint8_t packed = cur.u8();
  cur.u8();  // background color index
  cur.u8();  // aspect ratio
  if (!(packed & 0x80)) throw UnsupportedError("gif: missing global color table");
  const int table_size = 1 << ((packed & 0x07) + 1);
  Palette palette;
  palette.colors.resize(table_size);
  for (int j = 0; j < table_size; ++j) {
    for (int c = 0; c < 3; ++c) palette.colors[j][c] = cur.u8() / 255.0;
  }

  IndexedImage img;
  bool have_frame = false;
  while (true) {
    const uint8_t block = cur.u8();
    if (block == 0x3B) break;  // trailer
    if (block == 0x21) {       // extension: label + sub-blocks, skipped
      cur.u8();
      while (true) {
        const uint8_t len = cur.u8();
        if (len == 0) break;
        cur.skip(len);
      }
      continue;
    }
    if (block != 0x2C) throw CodecError("gif: unexpected block marker");
    if (have_frame) throw UnsupportedError("gif: animated input not supported");
    cur.u16();  // left
    cur.u16();  // top
    const uint32_t w = cur.u16();
    const uint32_t h = cur.u16();
    const uint8_t ipacked = cur.u8();
    if (ipacked & 0x80) throw UnsupportedError("gif: local color table not supported");
    if (ipacked & 0x40) throw UnsupportedError("gif: interlaced input not supported");
    if (w == 0 || h == 0) throw CodecError("gif: empty frame");
    const int min_code_size = cur.u8();
    std::vector<uint8_t> lzw;
    while (true) {
      const uint8_t len = cur.u8();
      if (len == 0) break;
      const size_t pos = lzw.size();
      lzw.resize(pos + len);
      cur.read(lzw.data() + pos, len);
    }
    std::vector<uint8_t> indices = lzw_decode(lzw, min_code_size);
    if (indices.size() != static_cast<size_t>(w) * h) {
      throw CodecError("gif: pixel count mismatch");
    }
    img.height = static_cast<int>(h);
    img.width = static_cast<int>(w);
    img.indices = std::move(indices);
    have_frame = true;
  }
  if (!have_frame) throw CodecError("gif: no image data");
  img.palette = palette;
  img.validate();
  return img;
}

void write_gif_file(const std::string& path, const IndexedImage& img) {
  const GifBytes bytes = write_gif(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (!out) throw IoError("gif: write failed: " + path);
}

IndexedImage read_gif_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  GifBytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_gif(bytes);
}

}  // namespace giffel
