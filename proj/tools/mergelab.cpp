#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mergelab/adversary.hpp"
#include "mergelab/analysis.hpp"
#include "mergelab/experiment.hpp"
#include "mergelab/runfile.hpp"
#include "mergelab/runs.hpp"

namespace {

using namespace mergelab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MERGELAB_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

PolicyId make_policy(const std::string& name, const std::string& alpha_text, bool force) {
    std::optional<Rational> alpha;
    if (!alpha_text.empty()) alpha = Rational::parse(alpha_text);
    return PolicyId::parse(name, alpha, force);
}

RunLengths read_run_lengths(const std::string& path, const std::string& inline_text) {
    if (!inline_text.empty()) return parse_run_lengths_text(inline_text);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    return parse_run_lengths(in);
}

void print_report(std::ostream& os, const CostReport& report) {
    os << "policy: " << report.policy.name();
    if (report.policy.alpha) os << " alpha=" << report.policy.alpha->str();
    os << "\n";
    os << "m: " << report.m << "\n";
    os << "n: " << report.n << "\n";
    os << "total_cost: " << report.total_cost << "\n";
    os << "max_stack_height: " << report.max_stack_height << "\n";
    std::ostringstream norm;
    norm.precision(6);
    norm << std::fixed << normalized_cost(report.total_cost, report.n, report.m);
    os << "normalized_cost: " << norm.str() << "\n";
}

void print_events(std::ostream& os, const CostReport& report) {
    for (std::size_t i = 0; i < report.events.size(); ++i) {
        const MergeEvent& e = report.events[i];
        os << "merge " << i + 1 << ": " << (e.kind == MergeKind::XY ? "XY" : "YZ") << " "
           << e.left << " " << e.right << "\n";
    }
}

int cmd_simulate(const std::string& input, const std::string& inline_lengths,
                 const std::string& policy_name, const std::string& alpha_text, bool force,
                 const std::vector<std::string>& instruments, bool show_events) {
    PolicyId policy = make_policy(policy_name, alpha_text, force);
    EngineOptions options;
    for (const std::string& inst : instruments) {
        if (inst == "shivers-weights") {
            options.check_shivers_weights = true;
        } else if (inst == "alpha-counter") {
            options.check_merge_counter = true;
        } else {
            throw CLI::ValidationError("--instrument", "unknown check \"" + inst + "\"");
        }
    }
    RunLengths runs = read_run_lengths(input, inline_lengths);
    try {
        CostReport report = simulate(runs, policy, options);
        print_report(std::cout, report);
        if (show_events) print_events(std::cout, report);
        return kExitOk;
    } catch (const InstrumentationViolation& v) {
        std::cerr << "instrumentation violation: " << v.what() << "\n";
        return kExitViolation;
    }
}

int cmd_adversary(const std::string& kind, std::uint64_t n, std::uint64_t m,
                  const std::string& alpha_text, bool verify) {
    Rational alpha = alpha_text.empty() ? rat(2) : Rational::parse(alpha_text);
    RunLengths runs;
    PolicyId matched;
    if (kind == "rtim") {
        if (n == 0) throw CLI::ValidationError("rtim", "requires -n");
        runs = r_tim(n);
        matched = PolicyId::timsort();
    } else if (kind == "rastack") {
        if (m == 0) throw CLI::ValidationError("rastack", "requires -m");
        runs = r_astack(m, alpha);
        matched = PolicyId::alpha_stack(alpha);
    } else if (kind == "rshivers") {
        if (m == 0) throw CLI::ValidationError("rshivers", "requires -m");
        runs = r_shivers(m);
        matched = PolicyId::shivers();
    } else if (kind == "ramerge") {
        if (n == 0) throw CLI::ValidationError("ramerge", "requires -n");
        runs = r_amerge(n, alpha);
        matched = alpha == rat(2) ? PolicyId::two_merge() : PolicyId::alpha_merge(alpha, true);
    } else {
        throw CLI::ValidationError("kind", "expected rtim|rastack|rshivers|ramerge");
    }
    std::cout << format_run_lengths(runs);
    if (!verify) return kExitOk;

    CostReport report = simulate(runs, matched);
    bool ok = true;
    std::ostringstream verdict;
    if (kind == "rtim") {
        std::uint64_t expected = timsort_cost_recurrence(n);
        ok = report.total_cost == expected;
        verdict << "cost " << report.total_cost << " vs recurrence " << expected;
    } else if (kind == "ramerge") {
        std::uint64_t expected = amerge_cost_recurrence(n, alpha);
        ok = report.total_cost == expected;
        verdict << "cost " << report.total_cost << " vs recurrence " << expected;
    } else {
        // omega(n log m) constructions: cost must exceed n(m-1)/2
        unsigned __int128 threshold = (unsigned __int128)(report.n) * (report.m - 1) / 2;
        ok = (unsigned __int128)(report.total_cost) > threshold || report.m == 1;
        verdict << "cost " << report.total_cost << " vs floor n(m-1)/2 = "
                << static_cast<std::uint64_t>(threshold);
    }
    std::cerr << "# verify " << (ok ? "ok" : "FAILED") << ": " << verdict.str() << "\n";
    return ok ? kExitOk : kExitViolation;
}

int cmd_experiment(const std::vector<std::string>& policy_texts, const std::string& dist_text,
                   const std::string& m_grid_text, std::size_t trials, std::uint64_t seed,
                   const std::string& out_path, unsigned threads, bool force) {
    ExperimentSpec spec;
    for (const std::string& text : policy_texts) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) spec.models.push_back(CostModel::parse(item, force));
        }
    }
    if (dist_text == "mixture") {
        spec.distribution = DistributionSpec::standard_mixture();
    } else if (dist_text.rfind("uniform:", 0) == 0) {
        std::uint64_t lo = 0, hi = 0;
        if (std::sscanf(dist_text.c_str(), "uniform:%lu:%lu", &lo, &hi) != 2) {
            throw CLI::ValidationError("--dist", "expected uniform:lo:hi");
        }
        spec.distribution = DistributionSpec::uniform(lo, hi);
    } else {
        throw CLI::ValidationError("--dist", "expected uniform:lo:hi or mixture");
    }
    // m grid: "lo:hi:step" or comma-separated values
    if (m_grid_text.find(':') != std::string::npos) {
        std::uint64_t lo = 0, hi = 0, step = 0;
        if (std::sscanf(m_grid_text.c_str(), "%lu:%lu:%lu", &lo, &hi, &step) != 3 || step == 0) {
            throw CLI::ValidationError("--m-grid", "expected lo:hi:step");
        }
        for (std::uint64_t m = lo; m <= hi; m += step) spec.m_grid.push_back(m);
    } else {
        std::stringstream ss(m_grid_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) spec.m_grid.push_back(std::strtoull(item.c_str(), nullptr, 10));
        }
    }
    spec.trials = trials;
    spec.master_seed = seed;

    std::string csv = to_csv(spec, run_experiment(spec, threads));
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write \"" + out_path + "\"");
        out << csv;
    }
    return kExitOk;
}

int cmd_sort(const std::string& input, const std::string& out_path, const std::string& policy_name,
             const std::string& alpha_text, bool force) {
    PolicyId policy = make_policy(policy_name, alpha_text, force);
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open \"" + input + "\"");
    std::vector<std::int64_t> values = parse_elements(in);
    CostReport report = mergelab::sort(values, policy);
    std::string text = format_elements(values);
    if (out_path.empty()) {
        std::cout << text;
        print_report(std::cerr, report);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write \"" + out_path + "\"");
        out << text;
        print_report(std::cout, report);
    }
    return kExitOk;
}

int cmd_bounds(const std::vector<std::string>& alpha_texts) {
    std::printf("%-10s %-12s %-6s %-14s\n", "alpha", "c_alpha", "k0", "d_alpha");
    for (const std::string& text : alpha_texts) {
        Rational alpha = Rational::parse(text);
        if (alpha <= rat(1) || alpha > rat(2)) {
            throw CLI::ValidationError("alpha", "bounds table covers 1 < alpha <= 2");
        }
        BoundSet b = bound_set(alpha);
        std::string k0 = b.k0 ? std::to_string(*b.k0) : "-";
        std::string d = b.d ? [&] {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.5f", *b.d);
            return std::string(buf);
        }() : "-";
        std::printf("%-10s %-12.5f %-6s %-14s\n", alpha.str().c_str(), b.c, k0.c_str(), d.c_str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"merge-policy laboratory: stable natural merge sorts over a shared run stack"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a merge policy over a run-length file");
    std::string sim_input, sim_inline, sim_policy, sim_alpha;
    std::vector<std::string> sim_instruments;
    bool sim_events = false, sim_force = false;
    sim->add_option("input", sim_input, "run-length file");
    sim->add_option("--lengths", sim_inline, "inline run lengths, e.g. \"3 1 8\"");
    sim->add_option("--policy", sim_policy, "merge policy")->required();
    sim->add_option("--alpha", sim_alpha, "policy parameter (decimal or p/q)");
    sim->add_option("--instrument", sim_instruments, "shivers-weights | alpha-counter");
    sim->add_flag("--events", sim_events, "print the merge event log");
    sim->add_flag("--force", sim_force, "permit alpha-merge with any alpha in (1,2]");

    // adversary
    auto* adv = app.add_subcommand("adversary", "emit a worst-case run-length sequence");
    std::string adv_kind, adv_alpha;
    std::uint64_t adv_n = 0, adv_m = 0;
    bool adv_verify = false;
    adv->add_option("kind", adv_kind, "rtim | rastack | rshivers | ramerge")->required();
    adv->add_option("-n", adv_n, "total length (rtim, ramerge)");
    adv->add_option("-m", adv_m, "run count (rastack, rshivers)");
    adv->add_option("--alpha", adv_alpha, "parameter for rastack/ramerge (default 2)");
    adv->add_flag("--verify", adv_verify, "simulate with the matched policy and check the bound");

    // experiment
    auto* exp = app.add_subcommand("experiment", "normalized merge cost over random run lengths, to CSV");
    std::vector<std::string> exp_policies;
    std::string exp_dist = "uniform:1:100", exp_grid = "1000:8000:500", exp_out;
    std::size_t exp_trials = 100;
    std::uint64_t exp_seed = default_seed();
    unsigned exp_threads = 1;
    bool exp_force = false;
    exp->add_option("--policies", exp_policies, "comma-separated, e.g. two-merge,alpha-merge:1.7,von-neumann")
        ->required();
    exp->add_option("--dist", exp_dist, "uniform:lo:hi | mixture");
    exp->add_option("--m-grid", exp_grid, "lo:hi:step or comma-separated run counts");
    exp->add_option("--trials", exp_trials, "trials per grid point (default 100)");
    exp->add_option("--seed", exp_seed, "master seed (default: MERGELAB_SEED or 0)");
    exp->add_option("--out", exp_out, "output CSV path (default stdout)");
    exp->add_option("--threads", exp_threads, "worker threads; output bytes do not depend on this");
    exp->add_flag("--force", exp_force, "permit alpha-merge with any alpha in (1,2]");

    // sort
    auto* sort_cmd = app.add_subcommand("sort", "stably sort a file of integers with a policy");
    std::string sort_input, sort_out, sort_policy, sort_alpha;
    bool sort_force = false;
    sort_cmd->add_option("input", sort_input, "newline-separated 64-bit integers")->required();
    sort_cmd->add_option("--out", sort_out, "output path (default stdout)");
    sort_cmd->add_option("--policy", sort_policy, "merge policy")->required();
    sort_cmd->add_option("--alpha", sort_alpha, "policy parameter");
    sort_cmd->add_flag("--force", sort_force, "permit alpha-merge with any alpha in (1,2]");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "print c_alpha, k0, d_alpha for given alphas");
    std::vector<std::string> bounds_alphas;
    bounds_cmd->add_option("alpha", bounds_alphas, "alpha values (decimal or p/q)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            if (sim_input.empty() && sim_inline.empty()) {
                std::cerr << "simulate: provide a file or --lengths\n";
                return kExitUsage;
            }
            return cmd_simulate(sim_input, sim_inline, sim_policy, sim_alpha, sim_force,
                                sim_instruments, sim_events);
        }
        if (adv->parsed()) return cmd_adversary(adv_kind, adv_n, adv_m, adv_alpha, adv_verify);
        if (exp->parsed())
            return cmd_experiment(exp_policies, exp_dist, exp_grid, exp_trials, exp_seed, exp_out,
                                  exp_threads, exp_force);
        if (sort_cmd->parsed())
            return cmd_sort(sort_input, sort_out, sort_policy, sort_alpha, sort_force);
        if (bounds_cmd->parsed()) return cmd_bounds(bounds_alphas);
    } catch (const InstrumentationViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
