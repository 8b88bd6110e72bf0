// parallel.hpp
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

#ifndef STUTTERLAB_PARALLEL_HPP_
#define STUTTERLAB_PARALLEL_HPP_

#include <functional>

namespace stutterlab {

// Runs fn(0) .. fn(n-1) on up to `workers` threads. Indices are dealt out
// in fixed contiguous chunks and results must be written by index, so the
// outcome cannot depend on the worker count. The first exception thrown by
// any index is rethrown after all threads join.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace stutterlab

#endif  // STUTTERLAB_PARALLEL_HPP_
