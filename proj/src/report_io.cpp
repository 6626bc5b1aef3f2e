#include "cbrng/report_io.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace cbrng::stat {

namespace {

Verdict parse_verdict(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "suspicious") return Verdict::suspicious;
    if (s == "fail") return Verdict::fail;
    throw std::invalid_argument("report: unknown verdict '" + s + "'");
}

}  // namespace

std::string format_report_line(const TestReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %16.6g %14.6g %14llu  %s", r.test_name.c_str(), r.statistic, r.p_value_or_z,
                  static_cast<unsigned long long>(r.n_samples), std::string(to_string(r.verdict)).c_str());
    return buf;
}

std::string reports_to_json(std::span<const TestReport> reports) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"test_name", r.test_name},
                       {"statistic", r.statistic},
                       {"p_value_or_z", r.p_value_or_z},
                       {"n_samples", r.n_samples},
                       {"verdict", std::string(to_string(r.verdict))}});
    }
    return arr.dump(2);
}

std::vector<TestReport> reports_from_json(const std::string& text) {
    try {
        const auto arr = nlohmann::json::parse(text);
        std::vector<TestReport> out;
        for (const auto& j : arr) {
            out.push_back({j.at("test_name").get<std::string>(), j.at("statistic").get<double>(),
                           j.at("p_value_or_z").get<double>(), j.at("n_samples").get<std::uint64_t>(),
                           parse_verdict(j.at("verdict").get<std::string>())});
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
}

}  // namespace cbrng::stat
