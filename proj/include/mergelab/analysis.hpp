#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mergelab/engine.hpp"
#include "mergelab/rational.hpp"

namespace mergelab {

/// Asymptotically optimal cost constant for alpha-merge sort:
///   c_alpha = (alpha+1) / ((alpha+1) log2(alpha+1) - alpha log2(alpha)).
/// Strictly increasing in alpha; c_2 ~ 1.08897, c_phi ~ 1.042298.
double c_alpha(double alpha);
double c_alpha(const Rational& alpha);

/// Exact test for alpha > phi (golden ratio): p^2 > p*q + q^2.
bool above_phi(const Rational& alpha);

/// Least l >= 1 with (alpha^2 - alpha - 1)/(alpha - 1) >= alpha^-l,
/// found by an exact big-integer scan. Defined for phi < alpha < 2.
int k_zero(const Rational& alpha);

/// Additive constant of the cost upper bound n*(d_alpha + c_alpha log m).
/// alpha = 2 has its own closed form d_2 = 6 - c_2 (3 log2(3) - 1)
/// ~ 1.91104; for phi < alpha < 2,
///   d_alpha = 2^(k0+1) * max(k0+1, 3) * (2 alpha - 1)/(alpha - 1) + 1.
double d_alpha(const Rational& alpha);

/// n * (d_alpha + c_alpha * log2 m); the log term vanishes at m = 1.
double upper_bound(std::uint64_t n, std::uint64_t m, const Rational& alpha);

/// total / (n log2 m). By convention 0 when m <= 1 (a single run has
/// cost 0 and the normalization is undefined there).
double normalized_cost(std::uint64_t total, std::uint64_t n, std::uint64_t m);

/// Integer-exact comparison against a float bound: allows 1e-6 relative
/// slack on the bound side so rounding never reports a false violation.
bool cost_within_bound(std::uint64_t total, double bound);

struct BoundSet {
    Rational alpha;
    double c = 0.0;
    std::optional<int> k0;  // defined only for phi < alpha < 2
    std::optional<double> d;  // defined for phi < alpha <= 2
};

/// Constants for one alpha; undefined members stay empty instead of throwing.
BoundSet bound_set(const Rational& alpha);

std::uint64_t floor_log2(std::uint64_t v);

/// floor(log_alpha n): the largest k with alpha^k <= n, exact.
std::uint64_t floor_log_alpha(std::uint64_t n, const Rational& alpha);

/// Stack-height bound check for a finished simulation:
/// two-merge: height <= 1 + floor(log2 n); alpha-merge (phi < alpha < 2):
/// height < 1 + floor(log_alpha n). Other policies are out of scope.
bool max_stack_height_ok(const CostReport& report);

struct LemmaResult {
    std::string name;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    std::string first_counterexample;
};

/// Randomized numeric spot-checks of the cost-bound inequalities behind
/// the alpha-merge analysis, at 1e-9 relative tolerance. Which
/// inequalities run depends on alpha's range. Failures are results, not
/// errors.
std::vector<LemmaResult> check_lemma_inequalities(const Rational& alpha, std::size_t samples_per_lemma,
                                                  std::uint64_t seed);

}  // namespace mergelab
