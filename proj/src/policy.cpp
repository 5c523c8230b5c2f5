#include "mergelab/policy.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace mergelab {

namespace {

using u128 = unsigned __int128;

// 1.619 <= alpha: the smallest rational guard above the golden ratio the
// parameter validation accepts without --force.
const Rational kAlphaMergeFloor(1619, 1000);

std::optional<Action> timsort_trigger(const StackView& v) {
    // Tests in order; any comparison naming a missing entry is false.
    if (v.x && v.z && *v.x < *v.z) return Action::MergeXY;
    if (v.x && v.y && v.z && u128(*v.x) <= u128(*v.y) + *v.z) return Action::MergeYZ;
    if (v.w && v.x && v.y && u128(*v.w) <= u128(*v.x) + *v.y) return Action::MergeYZ;
    if (v.y && v.z && *v.y <= *v.z) return Action::MergeYZ;
    return std::nullopt;
}

std::optional<Action> alpha_stack_trigger(const StackView& v, const Rational& alpha) {
    if (v.y && v.z && le_scaled(*v.y, alpha, *v.z)) return Action::MergeYZ;
    return std::nullopt;
}

std::optional<Action> shivers_trigger(const StackView& v) {
    if (v.y && v.z && std::bit_floor(*v.y) <= *v.z) return Action::MergeYZ;
    return std::nullopt;
}

std::optional<Action> two_merge_trigger(const StackView& v) {
    if (!(v.y && v.z)) return std::nullopt;
    if (u128(*v.y) < 2 * u128(*v.z)) {
        // A missing X counts as infinitely long.
        if (v.x && *v.x < *v.z) return Action::MergeXY;
        return Action::MergeYZ;
    }
    return std::nullopt;
}

std::optional<Action> alpha_merge_trigger(const StackView& v, const Rational& alpha) {
    if (!(v.y && v.z)) return std::nullopt;
    bool fires = lt_scaled(*v.y, alpha, *v.z) || (v.x && lt_scaled(*v.x, alpha, *v.y));
    if (!fires) return std::nullopt;
    if (v.x && *v.x < *v.z) return Action::MergeXY;
    return Action::MergeYZ;
}

std::optional<Action> augmented_shivers_trigger(const StackView& v) {
    if (!(v.y && v.z && std::bit_floor(*v.y) <= *v.z)) return std::nullopt;
    if (!v.x || *v.z <= *v.x) return Action::MergeYZ;
    return Action::MergeXY;
}

Action compose(const StackView& v, std::optional<Action> trigger) {
    if (trigger) return *trigger;
    if (v.has_pending_run) return Action::Push;
    if (v.height >= 2) return Action::MergeYZ;
    throw std::logic_error("next_action called on a finished state");
}

std::map<std::string, ExtensionRule>& extension_registry() {
    static std::map<std::string, ExtensionRule> registry;
    return registry;
}

}  // namespace

PolicyId PolicyId::parse(std::string_view name, std::optional<Rational> alpha, bool force) {
    PolicyId id;
    if (name == "timsort") {
        id.kind = PolicyKind::Timsort;
    } else if (name == "alpha-stack") {
        id.kind = PolicyKind::AlphaStack;
    } else if (name == "shivers") {
        id.kind = PolicyKind::Shivers;
    } else if (name == "augmented-shivers") {
        id.kind = PolicyKind::AugmentedShivers;
    } else if (name == "two-merge") {
        id.kind = PolicyKind::TwoMerge;
    } else if (name == "alpha-merge") {
        id.kind = PolicyKind::AlphaMerge;
    } else if (name.starts_with("ext:") && name.size() > 4) {
        id.kind = PolicyKind::Extension;
        id.extension = std::string(name.substr(4));
    } else {
        throw UnknownPolicyError("unknown policy \"" + std::string(name) + "\"");
    }
    id.alpha = alpha;
    id.force_alpha = force;
    id.validate();
    return id;
}

std::string PolicyId::name() const {
    switch (kind) {
        case PolicyKind::Timsort: return "timsort";
        case PolicyKind::AlphaStack: return "alpha-stack";
        case PolicyKind::Shivers: return "shivers";
        case PolicyKind::AugmentedShivers: return "augmented-shivers";
        case PolicyKind::TwoMerge: return "two-merge";
        case PolicyKind::AlphaMerge: return "alpha-merge";
        case PolicyKind::Extension: return "ext:" + extension;
    }
    return "?";
}

void PolicyId::validate() const {
    if (parameterized()) {
        if (!alpha) throw AlphaOutOfRangeError(name() + " requires --alpha");
        if (*alpha <= rat(1)) throw AlphaOutOfRangeError("alpha must exceed 1");
        if (kind == PolicyKind::AlphaMerge) {
            if (force_alpha) {
                if (*alpha > rat(2)) throw AlphaOutOfRangeError("alpha-merge requires alpha <= 2");
            } else if (*alpha < kAlphaMergeFloor || *alpha >= rat(2)) {
                throw AlphaOutOfRangeError(
                    "alpha-merge expects 1.619 <= alpha < 2 (use --force to override)");
            }
        }
    } else if (alpha) {
        throw AlphaOutOfRangeError(name() + " takes no alpha");
    }
    if (kind == PolicyKind::Extension && !extension_registered(extension)) {
        throw UnknownPolicyError("extension policy \"" + extension + "\" is not registered");
    }
}

std::optional<Action> merge_trigger(const PolicyId& policy, const StackView& view) {
    switch (policy.kind) {
        case PolicyKind::Timsort: return timsort_trigger(view);
        case PolicyKind::AlphaStack: return alpha_stack_trigger(view, *policy.alpha);
        case PolicyKind::Shivers: return shivers_trigger(view);
        case PolicyKind::AugmentedShivers: return augmented_shivers_trigger(view);
        case PolicyKind::TwoMerge: return two_merge_trigger(view);
        case PolicyKind::AlphaMerge: return alpha_merge_trigger(view, *policy.alpha);
        case PolicyKind::Extension:
            throw std::logic_error("extension policies need an ExtensionView");
    }
    return std::nullopt;
}

Action next_action(const PolicyId& policy, const StackView& view) {
    return compose(view, merge_trigger(policy, view));
}

Action timsort_rule(const StackView& v) { return compose(v, timsort_trigger(v)); }

Action alpha_stack_rule(const StackView& v, const Rational& alpha) {
    if (alpha <= rat(1)) throw AlphaOutOfRangeError("alpha must exceed 1");
    return compose(v, alpha_stack_trigger(v, alpha));
}

Action shivers_rule(const StackView& v) { return compose(v, shivers_trigger(v)); }

Action two_merge_rule(const StackView& v) { return compose(v, two_merge_trigger(v)); }

Action alpha_merge_rule(const StackView& v, const Rational& alpha) {
    if (alpha <= rat(1) || alpha > rat(2)) throw AlphaOutOfRangeError("alpha-merge needs 1 < alpha <= 2");
    return compose(v, alpha_merge_trigger(v, alpha));
}

Action augmented_shivers_rule(const StackView& v) { return compose(v, augmented_shivers_trigger(v)); }

void register_extension(const std::string& name, ExtensionRule rule) {
    if (name.empty()) throw std::invalid_argument("extension name must be nonempty");
    extension_registry()[name] = std::move(rule);
}

bool extension_registered(const std::string& name) {
    return extension_registry().contains(name);
}

const ExtensionRule& extension_rule(const std::string& name) {
    auto it = extension_registry().find(name);
    if (it == extension_registry().end()) {
        throw UnknownPolicyError("extension policy \"" + name + "\" is not registered");
    }
    return it->second;
}

}  // namespace mergelab
