#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mergelab/errors.hpp"
#include "mergelab/policy.hpp"

namespace mergelab {

/// A validated sequence of positive run lengths; n is their checked sum.
class RunLengths {
public:
    RunLengths() = default;
    explicit RunLengths(std::vector<std::uint64_t> lengths);

    const std::vector<std::uint64_t>& lengths() const { return lengths_; }
    std::uint64_t n() const { return n_; }
    std::size_t m() const { return lengths_.size(); }
    bool empty() const { return lengths_.empty(); }

    friend bool operator==(const RunLengths&, const RunLengths&) = default;

private:
    std::vector<std::uint64_t> lengths_;
    std::uint64_t n_ = 0;
};

enum class MergeKind : std::uint8_t { YZ, XY };

/// Sizes of the two runs combined by one merge. Positions are
/// recoverable from prefix sums and are not stored.
struct MergeEvent {
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    MergeKind kind = MergeKind::YZ;

    friend bool operator==(const MergeEvent&, const MergeEvent&) = default;
};

struct CostReport {
    std::uint64_t total_cost = 0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::size_t max_stack_height = 0;
    PolicyId policy;
    std::vector<MergeEvent> events;
};

/// Opt-in invariant checks; a failed check throws InstrumentationViolation.
/// Both apply to the main loop only (wrap-up merges are not covered by
/// the bounds they test).
struct EngineOptions {
    /// Per-entry weight bounds for the Shivers policy:
    ///   (a) w_i <= floor(log2 |Q_i|) * |Q_i| for every entry,
    ///   (b) w_Z <= floor(log2 |Y|) * |Z| when the stack has two entries.
    bool check_shivers_weights = false;
    /// Credit counter for two-merge / alpha-merge: each push of Q_l adds
    /// (2+alpha)*l*|Q_l|, each merge subtracts its cost, and the counter
    /// must dominate sum_i (2+alpha)*i*|Q_i| throughout. Exact rational
    /// arithmetic (integers scaled by alpha's denominator).
    bool check_merge_counter = false;
};

struct StackEntry {
    std::uint64_t start = 0;   // offset of the run in the underlying array
    std::uint64_t length = 0;
    std::uint64_t weight = 0;  // merge cost spent building this entry
    std::uint64_t runs = 1;    // original runs merged into it
};

struct WeightViolation {
    std::size_t index;  // 1-based stack position, bottom first
    std::uint64_t weight;
    std::uint64_t bound;
    std::string describe() const;
};

/// Shivers weight bounds on a raw stack state; nullopt when satisfied.
std::optional<WeightViolation> shivers_weight_violation(std::span<const StackEntry> stack);

/// The credit counter behind the merge-cost argument, exposed so tests
/// can drive states directly.
class MergeCounter {
public:
    explicit MergeCounter(const Rational& alpha);

    void on_push(std::size_t height_after_push, std::uint64_t length);
    void on_merge(std::uint64_t left, std::uint64_t right);
    bool invariant_holds(std::span<const StackEntry> stack) const;

private:
    __int128 scaled_ = 0;  // counter times alpha's denominator
    std::uint64_t p_ = 2;
    std::uint64_t q_ = 1;
};

/// Runs the pluggable-policy framework over a run-length sequence and
/// reports the exact merge cost. Throws OverflowError if the total cost
/// leaves 64 bits.
CostReport simulate(const RunLengths& runs, const PolicyId& policy, const EngineOptions& options = {});

/// Merge cost of the nonadaptive baseline: n unit runs merged bottom-up
/// in adjacent pairs, left to right, the odd run carried to the next round.
std::uint64_t von_neumann_cost(std::uint64_t n);

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(what);
    return r;
}

/// Shared core of simulate() and the element-level sorter. on_merge is
/// invoked before each stack update with (start of left run, left
/// length, right length); the two runs are always adjacent.
template <class OnMerge>
CostReport run_policy_loop(const RunLengths& runs, const PolicyId& policy,
                           const EngineOptions& options, OnMerge&& on_merge) {
    policy.validate();
    if (runs.empty()) throw std::invalid_argument("simulation requires at least one run");
    if (options.check_shivers_weights && policy.kind != PolicyKind::Shivers) {
        throw std::invalid_argument("shivers-weights instrumentation requires the shivers policy");
    }
    if (options.check_merge_counter && policy.kind != PolicyKind::TwoMerge &&
        policy.kind != PolicyKind::AlphaMerge) {
        throw std::invalid_argument("alpha-counter instrumentation requires two-merge or alpha-merge");
    }

    const auto& lengths = runs.lengths();
    CostReport report;
    report.policy = policy;
    report.n = runs.n();
    report.m = runs.m();
    report.events.reserve(runs.m() - 1);

    const bool instrumented = options.check_shivers_weights || options.check_merge_counter;
    std::vector<StackEntry> stack;
    stack.reserve(64);
    std::size_t next = 0;
    std::uint64_t consumed = 0;
    std::uint64_t step = 0;
    bool main_phase = true;

    MergeCounter counter(policy.kind == PolicyKind::TwoMerge ? rat(2) : policy.alpha.value_or(rat(2)));

    const bool is_extension = policy.kind == PolicyKind::Extension;
    const ExtensionRule* ext = is_extension ? &extension_rule(policy.extension) : nullptr;

    auto make_view = [&] {
        StackView v;
        std::size_t h = stack.size();
        v.height = h;
        v.has_pending_run = next < lengths.size();
        if (h >= 1) v.z = stack[h - 1].length;
        if (h >= 2) v.y = stack[h - 2].length;
        if (h >= 3) v.x = stack[h - 3].length;
        if (h >= 4) v.w = stack[h - 4].length;
        return v;
    };

    auto trigger = [&]() -> std::optional<Action> {
        if (!is_extension) return merge_trigger(policy, make_view());
        ExtensionView ev;
        ev.stack = make_view();
        ev.total_length = report.n;
        std::size_t h = stack.size();
        for (std::size_t i = 0; i < 4 && i < h; ++i) ev.starts[3 - i] = stack[h - 1 - i].start;
        if (next < lengths.size()) {
            ev.pending_start = consumed;
            ev.pending_length = lengths[next];
        }
        auto action = (*ext)(ev);
        if (action == Action::Push) throw std::logic_error("extension trigger returned Push");
        return action;
    };

    auto check_instrumentation = [&] {
        if (!instrumented) return;
        // conservation: entries plus unconsumed input always repartition n
        std::uint64_t on_stack = 0;
        for (const StackEntry& e : stack) on_stack += e.length;
        if (on_stack != consumed) {
            throw InstrumentationViolation("run length not conserved across a stack update", step);
        }
        if (!main_phase) return;
        if (options.check_shivers_weights) {
            if (auto v = shivers_weight_violation(stack)) {
                throw InstrumentationViolation(v->describe(), step);
            }
        }
        if (options.check_merge_counter && !counter.invariant_holds(stack)) {
            throw InstrumentationViolation("merge-credit counter fell below its floor", step);
        }
    };

    auto apply_merge = [&](Action action) {
        std::size_t need = action == Action::MergeYZ ? 2 : 3;
        if (stack.size() < need) throw std::logic_error("merge action on too small a stack");
        std::size_t i = stack.size() - need;
        StackEntry& a = stack[i];
        StackEntry& b = stack[i + 1];
        const std::uint64_t left = a.length;
        const std::uint64_t right = b.length;
        std::uint64_t cost = left + right;  // <= n, cannot overflow
        report.total_cost = checked_add(report.total_cost, cost, "total merge cost exceeds 64 bits");
        on_merge(a.start, left, right);
        report.events.push_back(
            {left, right, action == Action::MergeYZ ? MergeKind::YZ : MergeKind::XY});
        a.weight = checked_add(checked_add(a.weight, b.weight, "merge weight exceeds 64 bits"), cost,
                               "merge weight exceeds 64 bits");
        a.length += right;
        a.runs += b.runs;
        stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        ++step;
        if (main_phase && options.check_merge_counter) counter.on_merge(left, right);
        check_instrumentation();
    };

    while (next < lengths.size() || stack.size() > 1) {
        std::optional<Action> action = stack.size() >= 2 ? trigger() : std::nullopt;
        if (action) {
            apply_merge(*action);
        } else if (next < lengths.size()) {
            stack.push_back({consumed, lengths[next], 0, 1});
            consumed += lengths[next];
            ++next;
            ++step;
            if (stack.size() > report.max_stack_height) report.max_stack_height = stack.size();
            if (options.check_merge_counter) counter.on_push(stack.size(), stack.back().length);
            check_instrumentation();
        } else {
            main_phase = false;
            apply_merge(wrapup_rule());
        }
    }
    return report;
}

}  // namespace detail

}  // namespace mergelab
