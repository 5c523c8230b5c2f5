#include "mergelab/adversary.hpp"

#include <map>
#include <unordered_map>

namespace mergelab {

namespace {

void append_r_tim(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n <= 3) {
        out.push_back(n);
        return;
    }
    std::uint64_t half = n / 2;
    append_r_tim(half, out);
    append_r_tim(half - 1, out);
    out.push_back(n % 2 == 0 ? 1 : 2);
}

struct AmergeSplit {
    std::uint64_t n_prime, n_pprime, n_ppprime;
};

AmergeSplit amerge_split(std::uint64_t n, const Rational& alpha_plus_one) {
    AmergeSplit s;
    s.n_ppprime = floor_div(n, alpha_plus_one) + 1;
    std::uint64_t n_star = n - s.n_ppprime;
    s.n_pprime = floor_div(n_star, alpha_plus_one) + 1;
    s.n_prime = n_star - s.n_pprime;
    return s;
}

void append_r_amerge(std::uint64_t n, std::uint64_t base, const Rational& alpha_plus_one,
                     std::vector<std::uint64_t>& out) {
    if (n < base) {
        out.push_back(n);
        return;
    }
    AmergeSplit s = amerge_split(n, alpha_plus_one);
    append_r_amerge(s.n_prime, base, alpha_plus_one, out);
    append_r_amerge(s.n_pprime, base, alpha_plus_one, out);
    append_r_amerge(s.n_ppprime, base, alpha_plus_one, out);
}

}  // namespace

RunLengths r_tim(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("r_tim requires n >= 1");
    if (n > kAdversaryLengthCap) throw OverflowError("r_tim generation capped at 2^26 elements");
    std::vector<std::uint64_t> out;
    append_r_tim(n, out);
    RunLengths runs(std::move(out));
    if (runs.n() != n) throw std::logic_error("r_tim lengths do not sum to n");
    return runs;
}

std::uint64_t timsort_cost_recurrence(std::uint64_t n) {
    thread_local std::unordered_map<std::uint64_t, std::uint64_t> memo;
    if (n <= 3) return 0;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::uint64_t half = n / 2;
    std::uint64_t increment = (3 * n + (n % 2)) / 2;  // 3n/2, plus 1/2 when n is odd
    std::uint64_t cost = detail::checked_add(
        detail::checked_add(timsort_cost_recurrence(half), timsort_cost_recurrence(half - 1),
                            "timsort recurrence exceeds 64 bits"),
        increment, "timsort recurrence exceeds 64 bits");
    memo.emplace(n, cost);
    return cost;
}

RunLengths r_astack(std::uint64_t m, const Rational& alpha) {
    if (m == 0) throw std::invalid_argument("r_astack requires m >= 1");
    if (alpha <= rat(1)) throw AlphaOutOfRangeError("r_astack requires alpha > 1");
    using u128 = unsigned __int128;
    std::uint64_t s = 1;
    while ((u128(1) << s) * alpha.den() < alpha.num()) ++s;
    // s is the least integer with 2^s >= alpha.
    if (m > 62 || m * s > 62) throw OverflowError("r_astack requires m*s <= 62");
    std::vector<std::uint64_t> out;
    out.reserve(m);
    for (std::uint64_t i = m; i-- > 1;) {
        out.push_back((std::uint64_t{1} << (i * s)) - 1);
    }
    out.push_back(std::uint64_t{1} << (m * s));
    return RunLengths(std::move(out));
}

RunLengths r_shivers(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("r_shivers requires m >= 1");
    if (m > 62) throw OverflowError("r_shivers requires m <= 62");
    std::vector<std::uint64_t> out;
    out.reserve(m);
    for (std::uint64_t i = m; i-- > 1;) {
        out.push_back((std::uint64_t{1} << i) - 1);
    }
    out.push_back(std::uint64_t{1} << m);
    return RunLengths(std::move(out));
}

std::uint64_t amerge_base_threshold(const Rational& alpha) {
    if (alpha <= rat(1)) throw AlphaOutOfRangeError("r_amerge requires alpha > 1");
    return 3 * ceil_value(add_int(alpha, 1));
}

RunLengths r_amerge(std::uint64_t n, const Rational& alpha) {
    if (n == 0) throw std::invalid_argument("r_amerge requires n >= 1");
    if (n > kAdversaryLengthCap) throw OverflowError("r_amerge generation capped at 2^26 elements");
    std::uint64_t base = amerge_base_threshold(alpha);
    Rational alpha_plus_one = add_int(alpha, 1);
    std::vector<std::uint64_t> out;
    append_r_amerge(n, base, alpha_plus_one, out);
    RunLengths runs(std::move(out));
    if (runs.n() != n) throw std::logic_error("r_amerge lengths do not sum to n");
    if (n >= base && runs.lengths().back() < 3) {
        throw std::logic_error("r_amerge final run shorter than 3");
    }
    return runs;
}

std::uint64_t amerge_cost_recurrence(std::uint64_t n, const Rational& alpha) {
    thread_local std::map<std::pair<std::uint64_t, std::uint64_t>,
                          std::unordered_map<std::uint64_t, std::uint64_t>>
        memo_by_alpha;
    auto& memo = memo_by_alpha[{alpha.num(), alpha.den()}];
    std::uint64_t base = amerge_base_threshold(alpha);
    Rational alpha_plus_one = add_int(alpha, 1);

    auto rec = [&](auto&& self, std::uint64_t v) -> std::uint64_t {
        if (v < base) return 0;
        if (auto it = memo.find(v); it != memo.end()) return it->second;
        AmergeSplit s = amerge_split(v, alpha_plus_one);
        std::uint64_t cost = self(self, s.n_prime);
        cost = detail::checked_add(cost, self(self, s.n_pprime), "alpha-merge recurrence exceeds 64 bits");
        cost = detail::checked_add(cost, self(self, s.n_ppprime), "alpha-merge recurrence exceeds 64 bits");
        cost = detail::checked_add(cost, v, "alpha-merge recurrence exceeds 64 bits");
        cost = detail::checked_add(cost, s.n_prime, "alpha-merge recurrence exceeds 64 bits");
        cost = detail::checked_add(cost, s.n_pprime, "alpha-merge recurrence exceeds 64 bits");
        memo.emplace(v, cost);
        return cost;
    };
    return rec(rec, n);
}

}  // namespace mergelab
