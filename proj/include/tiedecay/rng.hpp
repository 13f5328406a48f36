// Copyright 2026 The tiedecay Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace tiedecay {

/// One step of SplitMix64 (Steele, Lea & Flood): advances `state` by the
/// golden-ratio increment and returns the finalized mix.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of ensemble member `member` under base seed `base`:
///   s = base; splitmix64(s);            // discard
///   s ^= member; return splitmix64(s)
std::uint64_t member_seed(std::uint64_t base, std::uint64_t member);

/// Reproducible random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; the derived draws below are defined
/// here rather than by <random> distributions (which are implementation
/// specific), so a seed yields the same draws on every platform.
///
///   below(n)  : rejection sampling on next() with threshold (2^64 - n) mod n,
///               then value mod n
///   uniform() : (next() >> 11) * 2^-53, in [0, 1)
///   coin()    : top bit of next()
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n);
  double uniform();
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tiedecay
