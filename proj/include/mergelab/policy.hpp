#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "mergelab/rational.hpp"

namespace mergelab {

enum class PolicyKind : std::uint8_t {
    Timsort,
    AlphaStack,
    Shivers,
    AugmentedShivers,
    TwoMerge,
    AlphaMerge,
    Extension,
};

/// Identifies a merge policy plus its parameter, if any.
///
/// alpha-stack accepts any rational alpha > 1. alpha-merge is guarded to
/// 1.619 <= alpha < 2 (the range its cost bounds cover); `force_alpha`
/// relaxes that to 1 < alpha <= 2 for experimentation.
struct PolicyId {
    PolicyKind kind = PolicyKind::Timsort;
    std::optional<Rational> alpha;
    std::string extension;
    bool force_alpha = false;

    static PolicyId timsort() { return {PolicyKind::Timsort, {}, {}, false}; }
    static PolicyId shivers() { return {PolicyKind::Shivers, {}, {}, false}; }
    static PolicyId augmented_shivers() { return {PolicyKind::AugmentedShivers, {}, {}, false}; }
    static PolicyId two_merge() { return {PolicyKind::TwoMerge, {}, {}, false}; }
    static PolicyId alpha_stack(Rational a) { return {PolicyKind::AlphaStack, a, {}, false}; }
    static PolicyId alpha_merge(Rational a, bool force = false) {
        return {PolicyKind::AlphaMerge, a, {}, force};
    }
    static PolicyId ext(std::string name) { return {PolicyKind::Extension, {}, std::move(name), false}; }

    /// Canonical name: timsort | alpha-stack | shivers | augmented-shivers |
    /// two-merge | alpha-merge | ext:<name>.
    static PolicyId parse(std::string_view name, std::optional<Rational> alpha = {}, bool force = false);

    std::string name() const;
    bool parameterized() const { return kind == PolicyKind::AlphaStack || kind == PolicyKind::AlphaMerge; }

    /// Throws UnknownPolicyError / AlphaOutOfRangeError.
    void validate() const;

    friend bool operator==(const PolicyId&, const PolicyId&) = default;
};

enum class Action : std::uint8_t { Push, MergeYZ, MergeXY };

/// What a policy may see: lengths of the top four stack entries
/// (Z topmost), whether input remains, and the stack height.
struct StackView {
    std::optional<std::uint64_t> w, x, y, z;
    bool has_pending_run = false;
    std::size_t height = 0;
};

/// The policy's inner-while decision: the merge to perform now, or
/// nullopt when the stack is quiescent under this policy.
std::optional<Action> merge_trigger(const PolicyId& policy, const StackView& view);

/// One full framework step: trigger merge if any, else push the pending
/// run, else collapse the top pair. Must not be called on a finished
/// state (height <= 1 with no pending run).
Action next_action(const PolicyId& policy, const StackView& view);

/// The final loop's only move.
inline Action wrapup_rule() { return Action::MergeYZ; }

// Per-policy rules with next_action semantics (trigger, else push, else wrap-up).
Action timsort_rule(const StackView& view);
Action alpha_stack_rule(const StackView& view, const Rational& alpha);
Action shivers_rule(const StackView& view);
Action two_merge_rule(const StackView& view);
Action alpha_merge_rule(const StackView& view, const Rational& alpha);
Action augmented_shivers_rule(const StackView& view);

/// Extra context handed to registered extension policies. Some external
/// merge rules need the total input length and absolute run positions,
/// so the slot exposes them alongside the plain view.
struct ExtensionView {
    StackView stack;
    std::uint64_t total_length = 0;
    std::array<std::optional<std::uint64_t>, 4> starts;  // positions of W, X, Y, Z
    std::optional<std::uint64_t> pending_start;
    std::optional<std::uint64_t> pending_length;
};

using ExtensionRule = std::function<std::optional<Action>(const ExtensionView&)>;

/// Register a named policy usable as PolicyId::ext(name). Not
/// thread-safe against concurrent simulations; register at startup.
void register_extension(const std::string& name, ExtensionRule rule);
bool extension_registered(const std::string& name);
const ExtensionRule& extension_rule(const std::string& name);

}  // namespace mergelab
