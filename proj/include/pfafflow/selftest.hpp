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

/**
 * @file selftest.hpp
 * @brief The acceptance checks, shared by the CLI selftest and the
 * acceptance binary.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pfafflow::selftest {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0: none
};

/// Criterion ids in a suite: "all", "schurq", "measure", "pfaffian",
/// "matrixpp", "bkp". Throws std::invalid_argument for other names.
std::vector<int> suite_criteria(std::string_view suite);

/// Runs one criterion (1..10). Exceptions inside a check become failures.
CheckResult run_criterion(int id);

std::vector<CheckResult> run_suite(std::string_view suite);

}  // namespace pfafflow::selftest
