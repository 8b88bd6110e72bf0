// test_rng.cpp
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "stutterlab/parallel.hpp"
#include "stutterlab/rng.hpp"

namespace stutterlab {

TEST_SUITE("rng") {

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 256; ++i) CHECK(a.Next() == b.Next());
}

TEST_CASE("uniform stays in the half open unit interval") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.UniformPositive();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("uniform int covers both endpoints") {
  Rng rng(3);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.UniformInt(2, 5);
    CHECK(v >= 2);
    CHECK(v <= 5);
    saw_lo |= v == 2;
    saw_hi |= v == 5;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
  CHECK(rng.UniformInt(9, 9) == 9);
}

TEST_CASE("normal has roughly the requested moments") {
  Rng rng(11);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal(2.0, 3.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::sqrt(var) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("weighted pick never lands on a zero weight") {
  Rng rng(5);
  const std::vector<double> weights = {0.0, 1.0, 0.0, 3.0};
  std::vector<int> hits(weights.size(), 0);
  for (int i = 0; i < 4000; ++i) hits[rng.PickWeighted(weights)] += 1;
  CHECK(hits[0] == 0);
  CHECK(hits[2] == 0);
  CHECK(hits[1] > 0);
  // Roughly proportional: index 3 carries three quarters of the mass.
  CHECK(hits[3] > 2 * hits[1]);
}

TEST_CASE("shuffle permutes and is seed deterministic") {
  std::vector<int> items(50);
  std::iota(items.begin(), items.end(), 0);
  std::vector<int> a = items, b = items;
  Rng ra(9), rb(9);
  ra.Shuffle(a);
  rb.Shuffle(b);
  CHECK(a == b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == items);
}

TEST_CASE("mix seed separates labels and values") {
  const std::uint64_t base = 7;
  CHECK(MixSeed(base, "am") != MixSeed(base, "sev"));
  CHECK(MixSeed(base, 1) != MixSeed(base, 2));
  CHECK(MixSeed(base, "am") == MixSeed(base, "am"));
}

TEST_CASE("parallel for visits every index exactly once") {
  for (int workers : {1, 2, 3, 8}) {
    std::vector<int> visits(1000, 0);
    ParallelFor(visits.size(), workers,
                [&visits](std::size_t i) { visits[i] += 1; });
    CHECK(std::all_of(visits.begin(), visits.end(),
                      [](int v) { return v == 1; }));
  }
  ParallelFor(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

}  // TEST_SUITE

}  // namespace stutterlab
