// Copyright 2026 The Salience Lab Authors.
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

#ifndef SALIENCE_PARALLEL_H_
#define SALIENCE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace salience {

// Worker cap: SALIENCE_LAB_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
size_t MaxWorkers();

// Runs fn(i) for i in [0, n) on up to MaxWorkers() threads. Jobs must be
// independent; results are written by index so ordering is deterministic.
// The first exception thrown by any job is rethrown after all workers join.
void ParallelFor(size_t n, const std::function<void(size_t)>& fn);

}  // namespace salience

#endif  // SALIENCE_PARALLEL_H_
