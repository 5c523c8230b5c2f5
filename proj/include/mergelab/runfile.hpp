#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "mergelab/engine.hpp"

namespace mergelab {

/// Run-length file format: ASCII positive decimal integers separated by
/// whitespace or newlines; '#' starts a comment running to end of line.
/// Throws ParseError carrying the offending 1-based line number.
RunLengths parse_run_lengths(std::istream& in);
RunLengths parse_run_lengths_text(const std::string& text);

/// Space-separated lengths terminated by a newline.
std::string format_run_lengths(const RunLengths& runs);

/// Element file format for the sorter: one signed 64-bit integer per
/// line; '#' comments and blank lines are skipped.
std::vector<std::int64_t> parse_elements(std::istream& in);
std::string format_elements(const std::vector<std::int64_t>& values);

}  // namespace mergelab
