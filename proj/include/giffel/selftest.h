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

#ifndef GIFFEL_SELFTEST_H_
#define GIFFEL_SELFTEST_H_

#include <cstdint>
#include <string>
#include <vector>

namespace giffel {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string message;  // failure detail, empty on success
};

// Embedded invariant suite: codec round-trips, projection consistency,
// finite-difference gradient checks, descent properties, and the committed
// golden fixtures under fixtures_dir. Designed to finish well under a
// minute.
std::vector<SelftestResult> run_selftest(const std::string& fixtures_dir,
                                         uint64_t seed);

}  // namespace giffel

#endif  // GIFFEL_SELFTEST_H_
