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

#ifndef GIFFEL_ERROR_H_
#define GIFFEL_ERROR_H_

#include <stdexcept>
#include <string>

namespace giffel {

// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched or invalid image dimensions / channel counts.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(what) {}
};

// Degenerate target sizes (resampling below 1 pixel, image smaller than a
// required window) or dimensions beyond a format's limits.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error(what) {}
};

// Malformed bitstreams and containers.
class CodecError : public Error {
 public:
  explicit CodecError(const std::string& what) : Error(what) {}
};

// Structurally valid input using a feature this library does not handle
// (interlacing, animation, local color tables).
class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(what) {}
};

// File system / stream failures.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Invalid configuration or argument values.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Non-finite losses or gradients inside the optimizer.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace giffel

#endif  // GIFFEL_ERROR_H_
