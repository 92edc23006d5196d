// Copyright 2026 The zsg Authors
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

#ifndef ZSG_RNG_H_
#define ZSG_RNG_H_

#include <cstdint>
#include <random>

namespace zsg {

// Seedable random stream used by every sampler.
//
// The engine is std::mt19937_64. Independent streams are derived from one
// 64-bit seed by passing (seed, stream id) through SplitMix64, so a solve
// run can give each sampling side its own reproducible stream:
//   stream 0: Bob-side sampling (a ~ p over columns)
//   stream 1: Alice-side sampling (b ~ q over rows)
//   stream 2: value estimation
// Draws are produced from raw engine output (no std distributions), so a
// seed reproduces the same sequence with any standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformIndex(uint64_t bound);

  // True with probability p (p clipped to [0, 1]).
  bool Bernoulli(double p) { return Uniform() < p; }

  uint64_t NextU64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; also used to derive per-round and per-replicate
// seeds.
uint64_t MixSeed(uint64_t seed, uint64_t stream);

}  // namespace zsg

#endif  // ZSG_RNG_H_
