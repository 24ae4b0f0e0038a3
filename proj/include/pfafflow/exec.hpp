/*
 * Copyright 2026 The Pfafflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

namespace pfafflow::exec {

/// Serial runs the reference loops; parallel splits the outer loop across
/// OpenMP threads and combines partial results in a fixed order.
enum class Mode { serial, parallel };

/// Worker count for parallel kernels. Defaults to PFAFFLOW_THREADS when set,
/// otherwise to the OpenMP default.
int thread_count();

/// Overrides the worker count (values < 1 reset to the default).
void set_thread_count(int n);

}  // namespace pfafflow::exec
