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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace pfafflow {

/// Strictly decreasing list of positive integers.
class StrictPartition {
public:
    StrictPartition() = default;
    /// Throws std::invalid_argument unless parts are positive and strictly decreasing.
    explicit StrictPartition(std::vector<int> parts);

    /// "3,1" or "" for the empty partition.
    static StrictPartition parse(std::string_view text);

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int operator[](std::size_t i) const { return parts_[i]; }
    int first() const { return parts_.empty() ? 0 : parts_.front(); }
    bool contains(int part) const;

    /// "(3,1)"; "()" for the empty partition.
    std::string to_string() const;

    friend bool operator==(const StrictPartition& a, const StrictPartition& b) {
        return a.parts_ == b.parts_;
    }
    friend auto operator<=>(const StrictPartition& a, const StrictPartition& b) {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// Strict partitions with largest part exactly `first` (0 gives only the
/// empty partition) and at most `max_length` parts.
std::vector<StrictPartition> strict_partitions_with_first(int first, int max_length);

/// Strict partitions with all parts <= max_part and at most max_length parts,
/// ordered by largest part, then lexicographically.
std::vector<StrictPartition> strict_partitions_bounded(int max_part, int max_length);

/// Strict partitions of exactly `weight`.
std::vector<StrictPartition> strict_partitions_of(int weight);

/// Strict partitions of weight <= max_weight, ordered by weight.
std::vector<StrictPartition> strict_partitions_up_to_weight(int max_weight);

}  // namespace pfafflow
