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

#include "clonerev/rng.hpp"

namespace clonerev {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ fnv1a(label));
  return splitmix64(h ^ splitmix64(index));
}

std::uint64_t sample_poisson(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

}  // namespace clonerev
