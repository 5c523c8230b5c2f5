#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mergelab/adversary.hpp"
#include "mergelab/runs.hpp"

using namespace mergelab;

namespace {

struct Keyed {
    int key;
    int tag;  // original position; never compared
};

bool key_less(const Keyed& a, const Keyed& b) { return a.key < b.key; }

std::vector<PolicyId> all_policies() {
    return {
        PolicyId::timsort(),
        PolicyId::shivers(),
        PolicyId::augmented_shivers(),
        PolicyId::two_merge(),
        PolicyId::alpha_stack(Rational(2, 1)),
        PolicyId::alpha_stack(Rational(81, 50)),
        PolicyId::alpha_merge(Rational(17, 10)),
        PolicyId::alpha_merge(Rational(81, 50)),
    };
}

/// Realizes a run-length sequence as an int array whose decomposition
/// reproduces exactly those runs: each run ascends, and each run begins
/// below the end of its predecessor so no two merge at detection time.
/// Only the final run may have length 1. An interior unit run cannot
/// survive decomposition at all (the singleton always glues onto its
/// successor), which is why adversary sequences get doubled first.
std::vector<int> realize(const RunLengths& runs) {
    std::vector<int> data;
    data.reserve(static_cast<std::size_t>(runs.n()));
    int base = 0;
    for (std::size_t r = 0; r < runs.m(); ++r) {
        std::uint64_t len = runs.lengths()[r];
        REQUIRE((len >= 2 || r + 1 == runs.m()));
        base -= 1;  // strict drop breaks the previous run
        for (std::uint64_t i = 0; i < len; ++i) data.push_back(base + static_cast<int>(i));
    }
    return data;
}

RunLengths doubled(const RunLengths& runs) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t len : runs.lengths()) out.push_back(2 * len);
    return RunLengths(std::move(out));
}

}  // namespace

TEST_CASE("decompose finds maximal runs and reverses strict descents") {
    std::vector<int> a = {1, 2, 3};
    CHECK(decompose(std::span<int>(a)) == std::vector<Run>{{0, 3}});

    std::vector<int> b = {3, 2, 1};
    CHECK(decompose(std::span<int>(b)) == std::vector<Run>{{0, 3}});
    CHECK(b == std::vector<int>{1, 2, 3});

    std::vector<int> c = {1, 2, 2, 1, 5};
    CHECK(decompose(std::span<int>(c)) == std::vector<Run>{{0, 3}, {3, 2}});

    std::vector<int> d = {7};
    CHECK(decompose(std::span<int>(d)) == std::vector<Run>{{0, 1}});

    // equal neighbours stop a descent: [2,2,1] is not strictly decreasing
    std::vector<int> e = {2, 2, 1};
    CHECK(decompose(std::span<int>(e)) == std::vector<Run>{{0, 2}, {2, 1}});
}

TEST_CASE("stable_merge: interleave, tie order, cost is |A| + |B|") {
    std::vector<int> a = {1, 3, 5, 2, 4};
    CHECK(stable_merge(std::span<int>(a), 3) == 5);
    CHECK(a == std::vector<int>{1, 2, 3, 4, 5});

    std::vector<Keyed> tie = {{1, 0}, {1, 1}};
    CHECK(stable_merge(std::span<Keyed>(tie), 1, key_less) == 2);
    CHECK(tie[0].tag == 0);  // A's element first
    CHECK(tie[1].tag == 1);

    std::vector<int> lopsided = {2, 4, 6, 8, 1};
    CHECK(stable_merge(std::span<int>(lopsided), 4) == 5);  // cost even when one pass suffices
    CHECK(lopsided == std::vector<int>{1, 2, 4, 6, 8});
}

TEST_CASE("stable_merge keeps ties ordered when the right side is buffered") {
    // len_a > len_b forces the backward path
    std::vector<Keyed> v = {{1, 0}, {2, 1}, {2, 2}, {2, 3}};
    CHECK(stable_merge(std::span<Keyed>(v), 3, key_less) == 4);
    std::vector<int> tags;
    for (const Keyed& k : v) tags.push_back(k.tag);
    CHECK(tags == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("sort: trivial inputs") {
    std::vector<int> empty;
    CostReport r0 = sort(empty, PolicyId::timsort());
    CHECK(r0.total_cost == 0);
    CHECK(r0.m == 0);

    std::vector<int> sorted(100);
    std::iota(sorted.begin(), sorted.end(), 0);
    CostReport r1 = sort(sorted, PolicyId::two_merge());
    CHECK(r1.total_cost == 0);
    CHECK(r1.m == 1);
    CHECK(std::is_sorted(sorted.begin(), sorted.end()));

    std::vector<int> reversed(100);
    std::iota(reversed.rbegin(), reversed.rend(), 0);
    CostReport r2 = sort(reversed, PolicyId::shivers());
    CHECK(r2.total_cost == 0);  // one descending run, reversed during detection
    CHECK(std::is_sorted(reversed.begin(), reversed.end()));
}

TEST_CASE("sorting realized adversary runs matches the simulator") {
    // Interior unit runs never survive decomposition, so the realizable
    // stand-ins are the doubled sequences.
    RunLengths shiv = doubled(r_shivers(3));
    CHECK(shiv.lengths() == std::vector<std::uint64_t>{6, 2, 16});
    std::vector<int> data = realize(shiv);
    CostReport from_sort = sort(data, PolicyId::shivers());
    CostReport from_sim = simulate(shiv, PolicyId::shivers());
    CHECK(std::is_sorted(data.begin(), data.end()));
    CHECK(from_sort.total_cost == from_sim.total_cost);
    CHECK(from_sort.events == from_sim.events);

    for (std::uint64_t n : {6u, 7u, 40u, 333u}) {
        RunLengths tim = doubled(r_tim(n));
        std::vector<int> elements = realize(tim);
        CostReport s = sort(elements, PolicyId::timsort());
        CHECK(std::is_sorted(elements.begin(), elements.end()));
        CHECK(s.events == simulate(tim, PolicyId::timsort()).events);
    }
}

TEST_CASE("sorter and simulator agree event for event on random inputs") {
    std::mt19937_64 rng(2024);
    for (const PolicyId& policy : all_policies()) {
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t n = rng() % 3000 + 1;
            std::vector<int> data(n);
            for (auto& v : data) v = static_cast<int>(rng() % 50);
            std::vector<int> copy = data;

            auto runs = decompose(std::span<int>(copy));
            std::vector<std::uint64_t> lengths;
            for (const Run& r : runs) lengths.push_back(r.length);
            CostReport sim = simulate(RunLengths(std::move(lengths)), policy);

            CostReport srt = sort(data, policy);
            CHECK(srt.events == sim.events);
            CHECK(srt.total_cost == sim.total_cost);
            CHECK(std::is_sorted(data.begin(), data.end()));
        }
    }
}

TEST_CASE("10^4 random keys: multiset-equal and stable under every policy") {
    std::mt19937_64 rng(31337);
    std::vector<Keyed> base(10000);
    for (std::size_t i = 0; i < base.size(); ++i) {
        base[i] = {static_cast<int>(rng() % 257), static_cast<int>(i)};
    }
    std::vector<Keyed> reference = base;
    std::stable_sort(reference.begin(), reference.end(), key_less);

    for (const PolicyId& policy : all_policies()) {
        std::vector<Keyed> work = base;
        sort(work, policy, key_less);
        REQUIRE(work.size() == reference.size());
        for (std::size_t i = 0; i < work.size(); ++i) {
            CHECK(work[i].key == reference[i].key);
            CHECK(work[i].tag == reference[i].tag);  // ties keep original order
        }
    }
}
