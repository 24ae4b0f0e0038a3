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
 * @file cli.hpp
 * @brief Command-line front end.
 *
 *   pfafflow schurq eval --lambda 3,1 [--x 1/2,1/3] [--kind Q|P]
 *   pfafflow measure rho --x 0.4,0.2 --y 0.3,0.1 --set 2,1 --method pf|brute
 *   pfafflow matrixpp corr --points 1,2,3,4 --weights 1,1,1,1 --n 4 --S 1,3
 *   pfafflow bkp check --equation bkp-residue|mbkp1|mbkp2|negflow1|mixed1 --g ...
 *   pfafflow pfaffian --matrix file.json
 *   pfafflow selftest --suite all
 *
 * Global options: --format json|table, --config FILE (key=value lines,
 * overridden by flags), --threads N (else PFAFFLOW_THREADS).
 * Exit codes: 0 ok, 1 usage error, 2 identity check failed.
 */

#pragma once

#include <ostream>
#include <string>

namespace pfafflow::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kIdentityFailed = 2;

struct RunConfig {
    int n_max = 9;         // largest odd time index in printed polynomials
    int degree = 12;       // weighted-degree cap D
    int degree_minus = 4;  // t_- cap for two-sided checks
    double tol = 1e-8;
    std::string format = "json";
    int threads = 0;  // 0: PFAFFLOW_THREADS or the OpenMP default

    /// Throws std::invalid_argument unless caps are positive, n_max odd,
    /// tol in (0, 1) and format is json or table.
    void validate() const;
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pfafflow::cli
