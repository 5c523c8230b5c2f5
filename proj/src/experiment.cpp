#include "mergelab/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "mergelab/analysis.hpp"

namespace mergelab {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

CostModel CostModel::parse(std::string_view text, bool force_alpha) {
    if (text == "von-neumann") return baseline();
    std::optional<Rational> alpha;
    std::string_view name = text;
    if (std::size_t colon = text.rfind(':'); colon != std::string_view::npos && !text.starts_with("ext:")) {
        alpha = Rational::parse(text.substr(colon + 1));
        name = text.substr(0, colon);
    }
    return of(PolicyId::parse(name, alpha, force_alpha));
}

std::string CostModel::policy_label() const {
    return von_neumann ? "von-neumann" : policy.name();
}

std::string CostModel::alpha_label() const {
    if (von_neumann || !policy.alpha) return "";
    return policy.alpha->str();
}

void ExperimentSpec::validate() const {
    if (models.empty()) throw std::invalid_argument("experiment needs at least one policy");
    if (m_grid.empty()) throw std::invalid_argument("experiment needs a nonempty m grid");
    if (trials == 0) throw std::invalid_argument("experiment needs trials >= 1");
    for (std::uint64_t m : m_grid) {
        if (m == 0) throw std::invalid_argument("m grid values must be >= 1");
    }
    distribution.validate();
    for (const CostModel& model : models) {
        if (!model.von_neumann) model.policy.validate();
    }
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec, unsigned threads) {
    spec.validate();
    struct Cell {
        std::uint64_t m;
        const CostModel* model;
    };
    std::vector<Cell> cells;
    for (std::uint64_t m : spec.m_grid) {
        for (const CostModel& model : spec.models) cells.push_back({m, &model});
    }

    std::vector<ExperimentRow> rows(cells.size());
    auto run_cell = [&](std::size_t index) {
        const Cell& cell = cells[index];
        std::vector<std::uint64_t> seeds = trial_seeds(mix_seed(spec.master_seed, cell.m), spec.trials);
        std::vector<double> values(spec.trials);
        for (std::size_t t = 0; t < spec.trials; ++t) {
            RunLengths runs = generate(spec.distribution.with_seed(seeds[t]),
                                       static_cast<std::size_t>(cell.m));
            std::uint64_t total = cell.model->von_neumann
                                      ? von_neumann_cost(runs.n())
                                      : simulate(runs, cell.model->policy).total_cost;
            values[t] = normalized_cost(total, runs.n(), runs.m());
        }
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(spec.trials);
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        double stddev = spec.trials > 1 ? std::sqrt(var / static_cast<double>(spec.trials - 1)) : 0.0;

        rows[index] = {cell.m,           cell.model->policy_label(), cell.model->alpha_label(),
                       spec.trials,      mean,                       stddev,
                       spec.master_seed};
    };

    if (threads <= 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                run_cell(i);
            }
        };
        std::vector<std::thread> pool;
        unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

std::string to_csv(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    os << "# mergelab experiment v1\n";
    os << "# prng: " << kPrngId << "\n";
    os << "# distribution: " << spec.distribution.describe() << "\n";
    os << "# master_seed: " << spec.master_seed << "\n";
    os << "m,policy,alpha,trials,mean_normalized_cost,stddev,seed\n";
    for (const ExperimentRow& row : rows) {
        os << row.m << ',' << row.policy << ',' << row.alpha << ',' << row.trials << ','
           << fixed6(row.mean_normalized_cost) << ',' << fixed6(row.stddev) << ',' << row.seed
           << '\n';
    }
    return os.str();
}

}  // namespace mergelab
