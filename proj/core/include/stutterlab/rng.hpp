// rng.hpp
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
//
// Copyright 2026 The stutterlab authors
//
// \file
// Deterministic pseudo-random number generation. Every stochastic stage in
// the pipeline derives a private stream from a master seed and a handful of
// stable labels (speaker id, utterance id, stage name), so results do not
// depend on evaluation order or on the number of worker threads.

#ifndef STUTTERLAB_RNG_HPP_
#define STUTTERLAB_RNG_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace stutterlab {

// One step of the splitmix64 sequence. Advances `state` and returns the
// next output. Also used as a finalizer when combining seed components.
inline std::uint64_t SplitMix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Combines a seed with an integer component.
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t value) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL + value);
  return SplitMix64(state);
}

// Combines a seed with a string component (FNV-1a over the bytes, then
// splitmix64). Stable across platforms; used for ids and stage labels.
inline std::uint64_t MixSeed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return MixSeed(seed, h);
}

// xoshiro256++ by Blackman and Vigna, seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = SplitMix64(state);
  }

  std::uint64_t Next() {
    const std::uint64_t result = Rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1).
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]; safe as a log() argument.
  double UniformPositive() {
    return static_cast<double>((Next() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi] inclusive.
  int UniformInt(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(Next() % span);
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Box-Muller transform; one fresh draw per call, no cached spare, so the
  // consumed stream length is a simple function of the call count.
  double Normal(double mean, double stddev);

  // Index into `weights` proportional to weight. Weights must be
  // non-negative with a positive sum.
  std::size_t PickWeighted(std::span<const double> weights);

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Next() % i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace stutterlab

#endif  // STUTTERLAB_RNG_HPP_
