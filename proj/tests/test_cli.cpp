#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

namespace {

struct CommandResult {
    int exit_code;
    std::string output;  // stdout only
};

CommandResult run_raw(const std::string& command_line) {
    std::string command = command_line + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

CommandResult run_cli(const std::string& args) {
    return run_raw(std::string(MERGELAB_CLI_PATH) + " " + args);
}

std::string temp_file(const std::string& name, const std::string& contents) {
    std::string path = std::string("/tmp/mergelab_test_") + name;
    std::ofstream out(path, std::ios::binary);
    out << contents;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("simulate: shivers on <3,1,8> totals 21") {
    std::string path = temp_file("simulate_318", "3 1 8\n");
    CommandResult r = run_cli("simulate " + path + " --policy shivers");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("total_cost: 21") != std::string::npos);
    CHECK(r.output.find("normalized_cost: 1.104127") != std::string::npos);
}

TEST_CASE("simulate: single run costs zero, inline input works") {
    CommandResult r = run_cli("simulate --lengths 5 --policy timsort");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("total_cost: 0") != std::string::npos);
}

TEST_CASE("simulate: zero length is a parse error naming the line") {
    std::string path = temp_file("bad_length", "# comment\n0 4\n");
    CommandResult r = run_cli("simulate " + path + " --policy shivers");
    CHECK(r.exit_code == 1);
}

TEST_CASE("simulate honors comments and event log flag") {
    std::string path = temp_file("commented", "# adversarial\n3 1 8  # trailing\n");
    CommandResult r = run_cli("simulate " + path + " --policy alpha-stack --alpha 2 --events");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("merge 1: YZ 1 8") != std::string::npos);
    CHECK(r.output.find("merge 2: YZ 3 9") != std::string::npos);
}

TEST_CASE("adversary emits whitespace-separated sequences") {
    CHECK(run_cli("adversary rtim -n 6").output == "3 2 1\n");
    CHECK(run_cli("adversary rshivers -m 4").output == "7 3 1 16\n");
    CHECK(run_cli("adversary ramerge -n 9 --alpha 2").output == "3 2 4\n");
    CHECK(run_cli("adversary rastack -m 3 --alpha 2").output == "3 1 8\n");
}

TEST_CASE("adversary --verify passes on honest constructions") {
    CHECK(run_cli("adversary rtim -n 1000 --verify").exit_code == 0);
    CHECK(run_cli("adversary ramerge -n 5000 --alpha 1.7 --verify").exit_code == 0);
    CHECK(run_cli("adversary rastack -m 10 --alpha 3 --verify").exit_code == 0);
    CHECK(run_cli("adversary rshivers -m 10 --verify").exit_code == 0);
}

TEST_CASE("adversary rejects bad parameters with exit 1") {
    CHECK(run_cli("adversary rastack -m 80 --alpha 2").exit_code == 1);
    CHECK(run_cli("adversary rtim").exit_code == 1);
    CHECK(run_cli("adversary nonesuch -n 5").exit_code == 1);
}

TEST_CASE("bounds prints the constants table with domain guards") {
    CommandResult r = run_cli("bounds 2 1.7 1.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1.08897") != std::string::npos);
    CHECK(r.output.find("1.91103") != std::string::npos);
    CHECK(r.output.find("220.4") != std::string::npos);
    CHECK(r.output.find("-") != std::string::npos);  // k0/d undefined at 1.5
    CHECK(run_cli("bounds 2.5").exit_code == 1);
}

TEST_CASE("sort: reverse-sorted file costs zero and round-trips") {
    std::string path = temp_file("sort_rev", "5\n4\n3\n2\n1\n");
    std::string out = "/tmp/mergelab_test_sort_rev_out";
    CommandResult r = run_cli("sort " + path + " --policy two-merge --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(slurp(out) == "1\n2\n3\n4\n5\n");
    CHECK(r.output.find("total_cost: 0") != std::string::npos);
}

TEST_CASE("sort: single value round-trips") {
    std::string path = temp_file("sort_one", "42\n");
    std::string out = "/tmp/mergelab_test_sort_one_out";
    CommandResult r = run_cli("sort " + path + " --policy timsort --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(slurp(out) == "42\n");
}

TEST_CASE("sort matches a reference sort on random input") {
    std::string contents;
    std::uint64_t state = 88172645463325252ull;
    std::vector<long long> values;
    for (int i = 0; i < 5000; ++i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        values.push_back(static_cast<long long>(state % 1000) - 500);
        contents += std::to_string(values.back()) + "\n";
    }
    std::string path = temp_file("sort_rand", contents);
    std::string out = "/tmp/mergelab_test_sort_rand_out";
    CHECK(run_cli("sort " + path + " --policy alpha-merge --alpha 1.7 --out " + out).exit_code == 0);
    std::sort(values.begin(), values.end());
    std::string expect;
    for (long long v : values) expect += std::to_string(v) + "\n";
    CHECK(slurp(out) == expect);
}

TEST_CASE("experiment CSV is byte-identical across runs and thread counts") {
    std::string base = "experiment --policies two-merge,timsort --dist uniform:1:100 "
                       "--m-grid 100,200 --trials 5 --seed 42";
    CommandResult a = run_cli(base);
    CommandResult b = run_cli(base);
    CommandResult c = run_cli(base + " --threads 4");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output == c.output);
    CHECK(a.output.find("100,two-merge,") != std::string::npos);
}

TEST_CASE("experiment writes files and respects MERGELAB_SEED") {
    std::string out1 = "/tmp/mergelab_test_exp1.csv";
    std::string cmd = "experiment --policies shivers --m-grid 64 --trials 3 --out ";
    CHECK(run_raw("env MERGELAB_SEED=7 " + std::string(MERGELAB_CLI_PATH) + " " + cmd + out1)
              .exit_code == 0);
    CHECK(slurp(out1).find("# master_seed: 7") != std::string::npos);
}

TEST_CASE("instrumented simulate flags mismatched policies with exit 1") {
    CHECK(run_cli("simulate --lengths \"3 1 8\" --policy timsort --instrument shivers-weights")
              .exit_code == 1);
    CHECK(run_cli("simulate --lengths \"3 1 8\" --policy shivers --instrument shivers-weights")
              .exit_code == 0);
    CHECK(run_cli("simulate --lengths \"3 1 8\" --policy two-merge --instrument alpha-counter")
              .exit_code == 0);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("simulate --policy shivers").exit_code == 1);  // no input
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("simulate --lengths 5 --policy nonesuch").exit_code == 1);
}
