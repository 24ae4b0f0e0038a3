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

#include "pfafflow/exec.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace pfafflow::exec {

namespace {

std::atomic<int> g_override{0};

int from_env() {
    const char* v = std::getenv("PFAFFLOW_THREADS");
    if (v == nullptr) return 0;
    try {
        const int n = std::stoi(v);
        return n > 0 ? n : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace

int thread_count() {
    if (int n = g_override.load(); n > 0) return n;
    if (int n = from_env(); n > 0) return n;
    return omp_get_max_threads();
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0); }

}  // namespace pfafflow::exec
