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

// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fail.

#include <cstdio>

#include "pfafflow/selftest.hpp"

int main() {
    int failed = 0;
    for (const auto& r : pfafflow::selftest::run_suite("all")) {
        std::printf("%s criterion %d: %s (%s; %.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
