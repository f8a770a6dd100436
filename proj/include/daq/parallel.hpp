// Copyright 2026 The DAQ Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <cstddef>
#include <functional>

namespace daq {

// Upper bound on worker threads. Defaults to DAQ_THREADS when set, else the
// hardware concurrency.
unsigned thread_limit() noexcept;
void set_thread_limit(unsigned n) noexcept;

// Splits [0, n) into contiguous chunks, one per worker, and runs
// fn(begin, end, worker) on each. Returns after every chunk completes.
// Exceptions from workers are rethrown on the caller's thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Worker count parallel_for will use for n items.
std::size_t worker_count(std::size_t n) noexcept;

}  // namespace daq
