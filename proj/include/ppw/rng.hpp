// Copyright 2026 The ppw Authors
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

#ifndef PPW_RNG_HPP_
#define PPW_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace ppw {

// SplitMix64 finalizer; used to derive stream keys.
std::uint64_t mix64(std::uint64_t z);

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Counter-based random stream identified by (master_seed, stream_index).
// The Philox key is a hash of both values and the stream index also occupies
// the upper counter words, so distinct pairs give independent sequences and
// equal pairs reproduce the same sequence on every platform.
//
// All variates are produced by code in this library (no std:: distributions)
// so realizations are bit-identical across standard library implementations.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  double exponential(double rate);
  std::uint64_t poisson(double mean);

 private:
  void refill();

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

}  // namespace ppw

#endif  // PPW_RNG_HPP_
