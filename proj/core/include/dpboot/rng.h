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

#ifndef DPBOOT_RNG_H_
#define DPBOOT_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace dpboot {

// A seeded, splittable source of randomness.
//
// A stream is identified by (seed, stream_id). Two streams with the same
// identity produce bit-identical sequences; streams with different ids are
// seeded from well-mixed, distinct states. Split() derives child streams
// from a key so that every (trial, subsample, resample) tuple can own an
// independent stream without any shared mutable state.
//
// A stream is single-owner: pass it by reference to the sampler that
// consumes it, copy it to replay.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child stream keyed by `key`. Does not advance this stream.
  RngStream Split(std::uint64_t key) const;

  // UniformRandomBitGenerator interface.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double UniformOpen();

  // Uniform on [0, n). Unbiased (Lemire's multiply-and-reject). n > 0.
  std::size_t UniformIndex(std::size_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t Mix64(std::uint64_t x);

}  // namespace dpboot

#endif  // DPBOOT_RNG_H_
