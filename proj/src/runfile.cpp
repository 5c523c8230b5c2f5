#include "mergelab/runfile.hpp"

#include <charconv>
#include <sstream>

namespace mergelab {

namespace {

std::string_view strip_comment(std::string_view line) {
    std::size_t hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

template <class T>
T parse_integer(std::string_view token, std::size_t line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError("value \"" + std::string(token) + "\" out of range", line_no);
    }
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("expected an integer, got \"" + std::string(token) + "\"", line_no);
    }
    return value;
}

}  // namespace

RunLengths parse_run_lengths(std::istream& in) {
    std::vector<std::uint64_t> lengths;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens{std::string(strip_comment(line))};
        std::string token;
        while (tokens >> token) {
            auto value = parse_integer<std::uint64_t>(token, line_no);
            if (value == 0) throw ParseError("run length must be >= 1", line_no);
            lengths.push_back(value);
        }
    }
    if (lengths.empty()) throw ParseError("no run lengths found", line_no == 0 ? 1 : line_no);
    try {
        return RunLengths(std::move(lengths));
    } catch (const OverflowError&) {
        throw ParseError("run lengths sum past 64 bits", line_no);
    }
}

RunLengths parse_run_lengths_text(const std::string& text) {
    std::istringstream in(text);
    return parse_run_lengths(in);
}

std::string format_run_lengths(const RunLengths& runs) {
    std::ostringstream os;
    const auto& lengths = runs.lengths();
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (i) os << ' ';
        os << lengths[i];
    }
    os << '\n';
    return os.str();
}

std::vector<std::int64_t> parse_elements(std::istream& in) {
    std::vector<std::int64_t> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens{std::string(strip_comment(line))};
        std::string token;
        while (tokens >> token) {
            values.push_back(parse_integer<std::int64_t>(token, line_no));
        }
    }
    return values;
}

std::string format_elements(const std::vector<std::int64_t>& values) {
    std::ostringstream os;
    for (std::int64_t v : values) os << v << '\n';
    return os.str();
}

}  // namespace mergelab
