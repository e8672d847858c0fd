//
// Copyright 2026 The dpboot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpboot/rng.h"

#include <array>
#include <cstdint>

namespace dpboot {

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

__extension__ using Uint128 = unsigned __int128;

std::mt19937_64 SeedEngine(std::uint64_t seed, std::uint64_t stream_id) {
  // Eight 32-bit words of seed material drawn from a SplitMix64 walk that
  // starts at a state depending on both halves of the stream identity.
  std::uint64_t state = Mix64(seed) ^ Mix64(stream_id ^ 0x5851f42d4c957f2dULL);
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    state = Mix64(state);
    words[i] = static_cast<std::uint32_t>(state);
    words[i + 1] = static_cast<std::uint32_t>(state >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(SeedEngine(seed, stream_id)) {}

RngStream RngStream::Split(std::uint64_t key) const {
  return RngStream(seed_, Mix64(stream_id_ * 0x9e3779b97f4a7c15ULL ^ Mix64(key)));
}

double RngStream::UniformOpen() {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

std::size_t RngStream::UniformIndex(std::size_t n) {
  std::uint64_t x = engine_();
  Uint128 product = static_cast<Uint128>(x) * n;
  auto low = static_cast<std::uint64_t>(product);
  if (low < n) {
    const std::uint64_t threshold = (0 - static_cast<std::uint64_t>(n)) % n;
    while (low < threshold) {
      x = engine_();
      product = static_cast<Uint128>(x) * n;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::size_t>(product >> 64);
}

}  // namespace dpboot
