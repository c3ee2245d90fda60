// Copyright 2026 The clonerev Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace clonerev {

/// Random stream used everywhere a sample is drawn. Streams are always passed
/// explicitly; there is no global generator.
using Rng = std::mt19937_64;

/// Child seed for (master seed, component label, index). Stable across
/// platforms and independent of execution order, so a parallel fan-out
/// reproduces the sequential one bit for bit.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t index = 0);

inline Rng derive_stream(std::uint64_t master_seed, std::string_view label,
                         std::uint64_t index = 0) {
  return Rng{derive_seed(master_seed, label, index)};
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Poisson sample; a zero (or negative) mean yields 0.
std::uint64_t sample_poisson(double mean, Rng& rng);

}  // namespace clonerev
