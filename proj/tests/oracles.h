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
// Test-only reference implementations, written independently of the library
// internals (plain nested loops, no shared helpers). Expected values frozen
// in the test files were produced with these and cross-checked against an
// equivalent NumPy implementation.

#ifndef GIFFEL_TESTS_ORACLES_H_
#define GIFFEL_TESTS_ORACLES_H_

#include <vector>

#include "giffel/image.h"

namespace giffel::testing {

// Direct evaluation of the banding edge-map pipeline on an RGB image:
// luma, 3x3 Sobel / 8 with replicate padding, magnitude, min(.,1),
// squared 7x7 window sum, product.
std::vector<double> naive_banding_edge_map(const FloatImage& rgb);

double naive_banding_score(const FloatImage& rgb);

// Mean of squared distance to the nearest palette color, by exhaustive
// search (no tie-break subtleties: distances differ in the fixtures).
double naive_palette_loss(const FloatImage& img,
                          const std::vector<std::array<double, 3>>& colors);

}  // namespace giffel::testing

#endif  // GIFFEL_TESTS_ORACLES_H_
