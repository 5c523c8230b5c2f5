#include "mergelab/analysis.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace mergelab {

namespace {

using bigint = boost::multiprecision::cpp_int;

constexpr double kRelTolerance = 1e-9;

bool leq_with_tolerance(double lhs, double rhs) {
    double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    return lhs <= rhs + kRelTolerance * scale;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);  // bias immaterial for sampling tuples
}

std::string tuple_str(std::initializer_list<std::pair<const char*, std::uint64_t>> fields) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : fields) {
        if (!first) os << " ";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

}  // namespace

double c_alpha(double alpha) {
    if (!(alpha > 1.0)) throw AlphaOutOfRangeError("c_alpha requires alpha > 1");
    return (alpha + 1.0) / ((alpha + 1.0) * std::log2(alpha + 1.0) - alpha * std::log2(alpha));
}

double c_alpha(const Rational& alpha) { return c_alpha(alpha.to_double()); }

bool above_phi(const Rational& alpha) {
    using u128 = unsigned __int128;
    u128 p = alpha.num(), q = alpha.den();
    return p * p > p * q + q * q;
}

int k_zero(const Rational& alpha) {
    if (!above_phi(alpha) || alpha >= rat(2)) {
        throw AlphaOutOfRangeError("k_zero is defined for phi < alpha < 2");
    }
    // (p^2 - pq - q^2) * p^l  >=  q^(l+1) * (p - q), scanned from l = 1.
    bigint p = alpha.num(), q = alpha.den();
    bigint lhs_base = p * p - p * q - q * q;  // > 0 above phi
    bigint rhs_base = q * (p - q);
    bigint pl = p, ql = q;
    for (int l = 1;; ++l) {
        if (lhs_base * pl >= rhs_base * ql) return l;
        pl *= p;
        ql *= q;
    }
}

double d_alpha(const Rational& alpha) {
    if (alpha == rat(2)) {
        return 6.0 - c_alpha(2.0) * (3.0 * std::log2(3.0) - 1.0);
    }
    if (!above_phi(alpha) || alpha > rat(2)) {
        throw AlphaOutOfRangeError("d_alpha is defined for phi < alpha <= 2");
    }
    int k0 = k_zero(alpha);
    double a = alpha.to_double();
    return std::ldexp(1.0, k0 + 1) * std::max<double>(k0 + 1, 3) * (2.0 * a - 1.0) / (a - 1.0) + 1.0;
}

double upper_bound(std::uint64_t n, std::uint64_t m, const Rational& alpha) {
    if (n == 0 || m == 0) throw std::invalid_argument("upper_bound requires n, m >= 1");
    double log_m = m == 1 ? 0.0 : std::log2(static_cast<double>(m));
    return static_cast<double>(n) * (d_alpha(alpha) + c_alpha(alpha) * log_m);
}

double normalized_cost(std::uint64_t total, std::uint64_t n, std::uint64_t m) {
    if (m <= 1) return 0.0;
    return static_cast<double>(total) /
           (static_cast<double>(n) * std::log2(static_cast<double>(m)));
}

bool cost_within_bound(std::uint64_t total, double bound) {
    return static_cast<double>(total) <= bound * (1.0 + 1e-6);
}

BoundSet bound_set(const Rational& alpha) {
    BoundSet b;
    b.alpha = alpha;
    b.c = c_alpha(alpha);
    if (above_phi(alpha) && alpha < rat(2)) b.k0 = k_zero(alpha);
    if (above_phi(alpha) && alpha <= rat(2)) b.d = d_alpha(alpha);
    return b;
}

std::uint64_t floor_log2(std::uint64_t v) {
    if (v == 0) throw std::invalid_argument("floor_log2(0)");
    return 63u - static_cast<std::uint64_t>(std::countl_zero(v));
}

std::uint64_t floor_log_alpha(std::uint64_t n, const Rational& alpha) {
    if (n == 0) throw std::invalid_argument("floor_log_alpha requires n >= 1");
    if (alpha <= rat(1)) throw AlphaOutOfRangeError("floor_log_alpha requires alpha > 1");
    bigint p = alpha.num(), q = alpha.den();
    bigint pk = p, qk = q;
    std::uint64_t k = 0;
    while (pk <= qk * n) {  // alpha^(k+1) <= n
        ++k;
        pk *= p;
        qk *= q;
    }
    return k;
}

bool max_stack_height_ok(const CostReport& report) {
    bool weak = report.policy.kind == PolicyKind::TwoMerge ||
                (report.policy.kind == PolicyKind::AlphaMerge && *report.policy.alpha == rat(2));
    if (weak) {
        return report.max_stack_height <= 1 + floor_log2(report.n);
    }
    if (report.policy.kind == PolicyKind::AlphaMerge) {
        return report.max_stack_height < 1 + floor_log_alpha(report.n, *report.policy.alpha);
    }
    throw std::invalid_argument("stack-height bound applies to two-merge and alpha-merge only");
}

std::vector<LemmaResult> check_lemma_inequalities(const Rational& alpha, std::size_t samples_per_lemma,
                                                  std::uint64_t seed) {
    if (alpha <= rat(1)) throw AlphaOutOfRangeError("lemma checks require alpha > 1");
    std::mt19937_64 rng(seed);
    std::vector<LemmaResult> results;
    const double c = c_alpha(alpha);
    const std::uint64_t p = alpha.num(), q = alpha.den();
    constexpr std::uint64_t kMax = 1'000'000;

    auto run = [&](const char* name, auto&& sample_and_check) {
        LemmaResult r;
        r.name = name;
        for (std::size_t i = 0; i < samples_per_lemma; ++i) {
            ++r.samples;
            if (std::optional<std::string> cex = sample_and_check()) {
                ++r.violations;
                if (r.first_counterexample.empty()) r.first_counterexample = *cex;
            }
        }
        results.push_back(std::move(r));
    };

    // A <= alpha*B and B <= alpha*A imply
    //   A c log a + B c log b + A + B <= (A+B) c log(a+b).
    run("balanced-merge", [&]() -> std::optional<std::string> {
        std::uint64_t B = draw(rng, 1, kMax);
        std::uint64_t lo = (B * q + p - 1) / p;  // ceil(B/alpha)
        std::uint64_t hi = B * p / q;
        std::uint64_t A = draw(rng, std::max<std::uint64_t>(lo, 1), std::max(hi, lo));
        std::uint64_t av = draw(rng, 1, kMax), bv = draw(rng, 1, kMax);
        double lhs = A * c * std::log2(double(av)) + B * c * std::log2(double(bv)) + A + B;
        double rhs = double(A + B) * c * std::log2(double(av + bv));
        if (leq_with_tolerance(lhs, rhs)) return std::nullopt;
        return tuple_str({{"A", A}, {"B", B}, {"a", av}, {"b", bv}});
    });

    // (alpha-1)B <= A implies
    //   A c log a + B (1 + c log b) + A + B <= (A+B)(1 + c log(a+b)).
    run("wrapup-merge", [&]() -> std::optional<std::string> {
        std::uint64_t B = draw(rng, 1, kMax);
        std::uint64_t lo = ((p - q) * B + q - 1) / q;  // ceil((alpha-1) B)
        std::uint64_t A = draw(rng, std::max<std::uint64_t>(lo, 1), std::max<std::uint64_t>(lo, 1) + kMax);
        std::uint64_t av = draw(rng, 1, kMax), bv = draw(rng, 1, kMax);
        double lhs = A * c * std::log2(double(av)) + B * (1.0 + c * std::log2(double(bv))) + A + B;
        double rhs = double(A + B) * (1.0 + c * std::log2(double(av + bv)));
        if (leq_with_tolerance(lhs, rhs)) return std::nullopt;
        return tuple_str({{"A", A}, {"B", B}, {"a", av}, {"b", bv}});
    });

    if (alpha == rat(2)) {
        // a >= 2 and A <= 2B imply
        //   A (d2 + c2 log(a-1)) + A + B <= (A+B)(d2 - 1 + c2 log(a+b)).
        const double d2 = d_alpha(rat(2));
        run("long-run-two", [&]() -> std::optional<std::string> {
            std::uint64_t B = draw(rng, 1, kMax);
            std::uint64_t A = draw(rng, 1, 2 * B);
            std::uint64_t av = draw(rng, 2, kMax), bv = draw(rng, 1, kMax);
            double lhs = A * (d2 + c * std::log2(double(av - 1))) + A + B;
            double rhs = double(A + B) * (d2 - 1.0 + c * std::log2(double(av + bv)));
            if (leq_with_tolerance(lhs, rhs)) return std::nullopt;
            return tuple_str({{"A", A}, {"B", B}, {"a", av}, {"b", bv}});
        });
    }

    if (above_phi(alpha) && alpha < rat(2)) {
        const double d = d_alpha(alpha);
        const int k0 = k_zero(alpha);

        // A <= alpha/(alpha-1) B implies
        //   A (d + c log a) + A + B <= (A+B)(d - 1 + c log(a+b)).
        run("long-run-alpha", [&]() -> std::optional<std::string> {
            std::uint64_t B = draw(rng, 1, kMax);
            std::uint64_t hi = B * p / (p - q);
            std::uint64_t A = draw(rng, 1, std::max<std::uint64_t>(hi, 1));
            std::uint64_t av = draw(rng, 1, kMax), bv = draw(rng, 1, kMax);
            double lhs = A * (d + c * std::log2(double(av))) + A + B;
            double rhs = double(A + B) * (d - 1.0 + c * std::log2(double(av + bv)));
            if (leq_with_tolerance(lhs, rhs)) return std::nullopt;
            return tuple_str({{"A", A}, {"B", B}, {"a", av}, {"b", bv}});
        });

        // k <= k0+1 and 2^k (2 alpha - 1)/(alpha - 1) C >= A+B+C imply
        //   A (d + c log a) + B (d + c log b) + k C + 2B + A
        //     <= A (d - 1 + c log a) + (B+C)(d - 1 + c log(b+1)).
        run("counted-collapse", [&]() -> std::optional<std::string> {
            std::uint64_t k = draw(rng, 1, static_cast<std::uint64_t>(k0) + 1);
            std::uint64_t C = draw(rng, 1, kMax);
            // budget = floor(2^k (2p-q)/(p-q) * C) - C, split between A and B
            using u128 = unsigned __int128;
            u128 cap = ((u128(1) << k) * (2 * p - q) * C) / (p - q);
            if (cap <= u128(C) + 2) return std::nullopt;  // no room for positive A, B
            std::uint64_t budget = static_cast<std::uint64_t>(
                std::min<u128>(cap - C, u128(4) * kMax));
            std::uint64_t A = draw(rng, 1, budget - 1);
            std::uint64_t B = draw(rng, 1, budget - A);
            std::uint64_t av = draw(rng, 1, kMax), bv = draw(rng, 1, kMax);
            double lhs = A * (d + c * std::log2(double(av))) + B * (d + c * std::log2(double(bv))) +
                         double(k) * C + 2.0 * B + A;
            double rhs = A * (d - 1.0 + c * std::log2(double(av))) +
                         double(B + C) * (d - 1.0 + c * std::log2(double(bv + 1)));
            if (leq_with_tolerance(lhs, rhs)) return std::nullopt;
            return tuple_str({{"A", A}, {"B", B}, {"C", C}, {"a", av}, {"b", bv}, {"k", k}});
        });
    }

    return results;
}

}  // namespace mergelab
