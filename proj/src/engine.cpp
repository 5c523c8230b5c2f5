#include "mergelab/engine.hpp"

#include <bit>

namespace mergelab {

namespace {

std::uint64_t floor_log2_u64(std::uint64_t v) {
    return 63u - static_cast<std::uint64_t>(std::countl_zero(v));
}

}  // namespace

RunLengths::RunLengths(std::vector<std::uint64_t> lengths) : lengths_(std::move(lengths)) {
    for (std::uint64_t len : lengths_) {
        if (len == 0) throw std::invalid_argument("run lengths must be positive");
        n_ = detail::checked_add(n_, len, "total input length exceeds 64 bits");
    }
}

std::string WeightViolation::describe() const {
    return "stack weight bound violated at entry " + std::to_string(index) + ": weight " +
           std::to_string(weight) + " > " + std::to_string(bound);
}

std::optional<WeightViolation> shivers_weight_violation(std::span<const StackEntry> stack) {
    using u128 = unsigned __int128;
    std::size_t h = stack.size();
    for (std::size_t i = 0; i < h; ++i) {
        std::uint64_t k = floor_log2_u64(stack[i].length);
        if (u128(stack[i].weight) > u128(k) * stack[i].length) {
            return WeightViolation{i + 1, stack[i].weight, k * stack[i].length};
        }
    }
    if (h >= 2) {
        std::uint64_t ky = floor_log2_u64(stack[h - 2].length);
        const StackEntry& z = stack[h - 1];
        if (u128(z.weight) > u128(ky) * z.length) {
            return WeightViolation{h, z.weight, ky * z.length};
        }
    }
    return std::nullopt;
}

MergeCounter::MergeCounter(const Rational& alpha) : p_(alpha.num()), q_(alpha.den()) {}

void MergeCounter::on_push(std::size_t height_after_push, std::uint64_t length) {
    // (2 + alpha) * height * length, scaled by q.
    scaled_ += static_cast<__int128>(2 * q_ + p_) * static_cast<__int128>(height_after_push) *
               static_cast<__int128>(length);
}

void MergeCounter::on_merge(std::uint64_t left, std::uint64_t right) {
    scaled_ -= static_cast<__int128>(q_) * (static_cast<__int128>(left) + right);
}

bool MergeCounter::invariant_holds(std::span<const StackEntry> stack) const {
    __int128 floor = 0;
    for (std::size_t i = 0; i < stack.size(); ++i) {
        floor += static_cast<__int128>(2 * q_ + p_) * static_cast<__int128>(i + 1) *
                 static_cast<__int128>(stack[i].length);
    }
    return scaled_ >= floor;
}

CostReport simulate(const RunLengths& runs, const PolicyId& policy, const EngineOptions& options) {
    return detail::run_policy_loop(runs, policy, options,
                                   [](std::uint64_t, std::uint64_t, std::uint64_t) {});
}

std::uint64_t von_neumann_cost(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t total = 0;
    std::uint64_t count = n;
    std::uint64_t last = 1;  // rightmost run length; all others equal `full`
    std::uint64_t full = 1;
    while (count > 1) {
        if (count % 2 == 0) {
            total = detail::checked_add(total, n, "von Neumann cost exceeds 64 bits");
            last = detail::checked_add(full, last, "von Neumann run length exceeds 64 bits");
            count /= 2;
        } else {
            total = detail::checked_add(total, n - last, "von Neumann cost exceeds 64 bits");
            count = count / 2 + 1;
        }
        if (count > 1 && __builtin_mul_overflow(full, 2u, &full)) {
            throw OverflowError("von Neumann run length exceeds 64 bits");
        }
    }
    return total;
}

}  // namespace mergelab
