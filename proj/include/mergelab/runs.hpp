#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "mergelab/engine.hpp"

namespace mergelab {

/// A maximal presorted segment of the working array.
struct Run {
    std::size_t start = 0;
    std::size_t length = 0;

    friend bool operator==(const Run&, const Run&) = default;
};

/// Splits data into maximal runs: non-decreasing segments are kept,
/// strictly decreasing segments are reversed in place. Strictness is what
/// keeps the reversal stable. Runs of length 1 are legal.
template <class T, class Compare = std::less<T>>
std::vector<Run> decompose(std::span<T> data, Compare cmp = {}) {
    std::vector<Run> runs;
    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        std::size_t j = i + 1;
        if (j == n) {
            runs.push_back({i, 1});
            break;
        }
        if (cmp(data[j], data[i])) {
            // strictly decreasing
            ++j;
            while (j < n && cmp(data[j], data[j - 1])) ++j;
            std::reverse(data.begin() + static_cast<std::ptrdiff_t>(i),
                         data.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
            ++j;
            while (j < n && !cmp(data[j], data[j - 1])) ++j;
        }
        runs.push_back({i, j - i});
        i = j;
    }
    return runs;
}

/// Stably merges the adjacent non-decreasing ranges [0, len_a) and
/// [len_a, size) of `both`, buffering the smaller side. On ties the
/// left run's element wins. Returns the merge cost |A| + |B|.
template <class T, class Compare = std::less<T>>
std::uint64_t stable_merge(std::span<T> both, std::size_t len_a, Compare cmp = {},
                           std::vector<T>* scratch = nullptr) {
    const std::size_t len_b = both.size() - len_a;
    std::vector<T> local;
    std::vector<T>& tmp = scratch ? *scratch : local;
    if (len_a == 0 || len_b == 0) return both.size();

    if (len_a <= len_b) {
        tmp.assign(both.begin(), both.begin() + static_cast<std::ptrdiff_t>(len_a));
        std::size_t ia = 0, ib = len_a, out = 0;
        while (ia < len_a && ib < both.size()) {
            if (cmp(both[ib], tmp[ia])) {
                both[out++] = std::move(both[ib++]);
            } else {
                both[out++] = std::move(tmp[ia++]);
            }
        }
        while (ia < len_a) both[out++] = std::move(tmp[ia++]);
    } else {
        tmp.assign(both.begin() + static_cast<std::ptrdiff_t>(len_a), both.end());
        std::size_t ia = len_a, ib = len_b, out = both.size();
        while (ia > 0 && ib > 0) {
            if (cmp(tmp[ib - 1], both[ia - 1])) {
                both[--out] = std::move(both[--ia]);
            } else {
                both[--out] = std::move(tmp[--ib]);
            }
        }
        while (ib > 0) both[--out] = std::move(tmp[--ib]);
    }
    return both.size();
}

/// Stable natural merge sort under the given policy. The merge order is
/// exactly simulate()'s on the decomposed run lengths, so the returned
/// report matches the simulator event for event.
template <class T, class Compare = std::less<T>>
CostReport sort(std::vector<T>& data, const PolicyId& policy, Compare cmp = {}) {
    policy.validate();
    if (data.empty()) {
        CostReport report;
        report.policy = policy;
        return report;
    }
    auto runs = decompose(std::span<T>(data), cmp);
    std::vector<std::uint64_t> lengths;
    lengths.reserve(runs.size());
    for (const Run& r : runs) lengths.push_back(r.length);

    std::vector<T> scratch;
    return detail::run_policy_loop(
        RunLengths(std::move(lengths)), policy, {},
        [&](std::uint64_t start, std::uint64_t len_a, std::uint64_t len_b) {
            stable_merge(std::span<T>(data).subspan(start, len_a + len_b),
                         static_cast<std::size_t>(len_a), cmp, &scratch);
        });
}

}  // namespace mergelab
