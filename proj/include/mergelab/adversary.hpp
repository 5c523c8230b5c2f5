#pragma once

#include <cstdint>

#include "mergelab/engine.hpp"
#include "mergelab/rational.hpp"

namespace mergelab {

/// Largest n the recursive sequence builders accept; beyond it the output
/// vectors stop being desk-scale.
inline constexpr std::uint64_t kAdversaryLengthCap = std::uint64_t{1} << 26;

/// Worst-case run lengths for Timsort: <n> for n <= 3, else the
/// concatenation of the sequences for floor(n/2) and floor(n/2)-1
/// followed by a run of 1 (n even) or 2 (n odd). Satisfies m <= n <= 3m.
RunLengths r_tim(std::uint64_t n);

/// Exact Timsort merge cost on r_tim(n):
///   c(1) = c(2) = c(3) = 0,
///   c(n) = c(n') + c(n'-1) + 3n/2 + (n mod 2)/2 with n' = floor(n/2).
/// Always integral. Memoized per thread.
std::uint64_t timsort_cost_recurrence(std::uint64_t n);

/// Worst-case run lengths for alpha-stack sort, m runs with s the least
/// integer where 2^s >= alpha:
///   <2^((m-1)s) - 1, ..., 2^(2s) - 1, 2^s - 1, 2^(ms)>.
/// Requires m*s <= 62 so every length and the total cost stay in range.
RunLengths r_astack(std::uint64_t m, const Rational& alpha);

/// Worst-case run lengths for Shivers sort, 1 <= m <= 62:
///   <2^(m-1) - 1, ..., 7, 3, 1, 2^m>.
RunLengths r_shivers(std::uint64_t m);

/// 3 * ceil(alpha + 1): inputs shorter than this stay a single run.
std::uint64_t amerge_base_threshold(const Rational& alpha);

/// Worst-case run lengths for alpha-merge sort. For n below the base
/// threshold the sequence is <n>; otherwise it splits
///   n''' = floor(n/(alpha+1)) + 1,   n* = n - n''',
///   n''  = floor(n*/(alpha+1)) + 1,  n'  = n* - n''
/// and concatenates the sequences for n', n'', n'''. All divisions are
/// exact integer arithmetic on the rational alpha.
RunLengths r_amerge(std::uint64_t n, const Rational& alpha);

/// Exact alpha-merge cost on r_amerge(n, alpha):
///   c(n) = 0 below the base threshold, else
///   c(n) = c(n') + c(n'') + c(n''') + n + n' + n''.
/// Memoized per (thread, alpha).
std::uint64_t amerge_cost_recurrence(std::uint64_t n, const Rational& alpha);

}  // namespace mergelab
