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

#include "pfafflow/partitions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pfafflow {

StrictPartition::StrictPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("strict partition parts must be positive");
        if (i > 0 && parts_[i] >= parts_[i - 1]) {
            throw std::invalid_argument("partition " + to_string() + " is not strictly decreasing");
        }
        weight_ += parts_[i];
    }
}

StrictPartition StrictPartition::parse(std::string_view text) {
    std::vector<int> parts;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partition part '" + token + "'");
        }
        if (used != token.size()) throw std::invalid_argument("bad partition part '" + token + "'");
        parts.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ') {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    return StrictPartition(std::move(parts));
}

bool StrictPartition::contains(int part) const {
    return std::find(parts_.begin(), parts_.end(), part) != parts_.end();
}

std::string StrictPartition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

std::vector<StrictPartition> strict_partitions_with_first(int first, int max_length) {
    std::vector<StrictPartition> out;
    if (first < 0 || max_length < 0) return out;
    if (first == 0) {
        out.emplace_back();
        return out;
    }
    if (max_length == 0) return out;
    std::vector<int> cur{first};
    std::function<void(int)> rec = [&](int below) {
        out.emplace_back(cur);
        if (static_cast<int>(cur.size()) == max_length) return;
        for (int p = below - 1; p >= 1; --p) {
            cur.push_back(p);
            rec(p);
            cur.pop_back();
        }
    };
    rec(first);
    return out;
}

std::vector<StrictPartition> strict_partitions_bounded(int max_part, int max_length) {
    std::vector<StrictPartition> out;
    for (int first = 0; first <= max_part; ++first) {
        auto slice = strict_partitions_with_first(first, max_length);
        out.insert(out.end(), slice.begin(), slice.end());
    }
    return out;
}

std::vector<StrictPartition> strict_partitions_of(int weight) {
    std::vector<StrictPartition> out;
    if (weight < 0) return out;
    if (weight == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int below) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, below - 1); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(weight, weight + 1);
    return out;
}

std::vector<StrictPartition> strict_partitions_up_to_weight(int max_weight) {
    std::vector<StrictPartition> out;
    for (int w = 0; w <= max_weight; ++w) {
        auto level = strict_partitions_of(w);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace pfafflow
