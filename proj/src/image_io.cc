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

#include "giffel/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace giffel {

namespace {

// PPM token reader: skips whitespace and '#' comments.
int next_ppm_int(std::istream& in) {
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
    } else if (!std::isspace(ch)) {
      break;
    }
  }
  if (ch == EOF) throw IoError("ppm: unexpected end of header");
  int value = 0;
  bool any = false;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    any = true;
    ch = in.get();
  }
  if (!any) throw IoError("ppm: malformed header");
  if (ch != EOF) in.unget();
  return value;
}

uint8_t to_byte(double v) {
  return static_cast<uint8_t>(std::lround(clamp01(v) * 255.0));
}

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

}  // namespace

FloatImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[2];
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '6') {
    throw IoError("ppm: not a P6 file: " + path);
  }
  const int w = next_ppm_int(in);
  const int h = next_ppm_int(in);
  const int maxval = next_ppm_int(in);
  if (maxval != 255) throw UnsupportedError("ppm: only maxval 255 supported");
  in.get();  // single whitespace after maxval
  std::vector<uint8_t> raw(static_cast<size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(raw.data()), raw.size());
  if (static_cast<size_t>(in.gcount()) != raw.size()) {
    throw IoError("ppm: truncated pixel data: " + path);
  }
  FloatImage img(h, w, 3);
  for (size_t i = 0; i < raw.size(); ++i) img.data()[i] = raw[i] / 255.0;
  return img;
}

void write_ppm(const std::string& path, const FloatImage& img) {
  FloatImage rgb = img;
  if (img.channels() == 1) {
    rgb = FloatImage(img.height(), img.width(), 3);
    for (int r = 0; r < img.height(); ++r)
      for (int c = 0; c < img.width(); ++c)
        for (int m = 0; m < 3; ++m) rgb.at(r, c, m) = img.at(r, c, 0);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "P6\n" << rgb.width() << " " << rgb.height() << "\n255\n";
  std::vector<uint8_t> raw(rgb.size());
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = to_byte(rgb.data()[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), raw.size());
  if (!out) throw IoError("ppm: write failed: " + path);
}

FloatImage read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open " + path);
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png: allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png: allocation failed");
  }
  std::vector<std::vector<uint8_t>> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw CodecError("png: failed to decode " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
      png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  rows.assign(h, std::vector<uint8_t>(png_get_rowbytes(png, info)));
  std::vector<png_bytep> row_ptrs(h);
  for (int r = 0; r < h; ++r) row_ptrs[r] = rows[r].data();
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  FloatImage img(h, w, 3);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < 3; ++m) {
        img.at(r, c, m) = rows[r][static_cast<size_t>(c) * 3 + m] / 255.0;
      }
    }
  }
  return img;
}

void write_png(const std::string& path, const FloatImage& img) {
  if (img.channels() != 3) throw ShapeError("write_png: expected 3 channels");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write " + path);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png: allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png: allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("png: failed to encode " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<uint8_t> row(static_cast<size_t>(img.width()) * 3);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c)
      for (int m = 0; m < 3; ++m)
        row[static_cast<size_t>(c) * 3 + m] = to_byte(img.at(r, c, m));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

FloatImage read_image(const std::string& path) {
  std::string ext;
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos) {
    ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
  }
  if (ext == "ppm") return read_ppm(path);
  if (ext == "png") return read_png(path);
  throw UnsupportedError("unsupported image format: " + path);
}

}  // namespace giffel
