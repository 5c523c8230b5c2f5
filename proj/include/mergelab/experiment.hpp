#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergelab/generators.hpp"
#include "mergelab/policy.hpp"

namespace mergelab {

/// One line in an experiment: either a run-stack policy or the
/// nonadaptive binary-tree baseline ("von-neumann"), which ignores the
/// runs and depends only on n.
struct CostModel {
    bool von_neumann = false;
    PolicyId policy;

    static CostModel baseline() { return {true, {}}; }
    static CostModel of(PolicyId p) { return {false, std::move(p)}; }
    /// "von-neumann" or a policy name, optionally suffixed ":alpha".
    static CostModel parse(std::string_view text, bool force_alpha = false);

    std::string policy_label() const;  // CSV policy column
    std::string alpha_label() const;   // CSV alpha column ("" when none)
};

struct ExperimentSpec {
    std::vector<CostModel> models;
    DistributionSpec distribution;  // its seed field is ignored; see master_seed
    std::vector<std::uint64_t> m_grid;
    std::size_t trials = 100;
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct ExperimentRow {
    std::uint64_t m = 0;
    std::string policy;
    std::string alpha;
    std::size_t trials = 0;
    double mean_normalized_cost = 0.0;
    double stddev = 0.0;
    std::uint64_t seed = 0;
};

/// Runs trials x m_grid x models. Trial t at grid point m draws from
/// seed trial_seeds(mix_seed(master_seed, m), trials)[t], so every model
/// sees the same inputs and any thread count produces the same bytes.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec, unsigned threads = 1);

/// CSV with '#'-prefixed metadata, a fixed header, and one row per
/// (m, model) in declaration order. Byte-stable for a given spec.
std::string to_csv(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows);

}  // namespace mergelab
