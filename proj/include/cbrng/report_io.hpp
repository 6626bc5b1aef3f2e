#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cbrng/stat_suite.hpp"

namespace cbrng::stat {

/// One fixed-width text line: name, statistic, p/z, samples, verdict.
std::string format_report_line(const TestReport& r);

/// JSON array, one object per report with exactly the TestReport fields.
std::string reports_to_json(std::span<const TestReport> reports);

/// Throws std::invalid_argument on malformed input.
std::vector<TestReport> reports_from_json(const std::string& text);

}  // namespace cbrng::stat
