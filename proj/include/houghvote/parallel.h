// Copyright 2026 The HoughVote Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOUGHVOTE_PARALLEL_H_
#define HOUGHVOTE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace houghvote {

// Worker count: hardware concurrency, capped by the HVT_THREADS environment
// variable when it holds a positive integer.
int DefaultWorkerCount();

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
// visited exactly once; the first exception thrown by any body is rethrown
// after all workers joined.
void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& body);

}  // namespace houghvote

#endif  // HOUGHVOTE_PARALLEL_H_
