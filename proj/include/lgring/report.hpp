// Machine-readable run reports. The JSON body is deterministic for a
// given (input, config, version); wall-clock timings live in the separate
// top-level "timings_ms" object so byte comparisons can exclude them.
#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace lgring {

inline constexpr const char* kToolVersion = "0.1.0";

using OrderedJson = nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    std::string verdict;  // pass | fail | skipped
    OrderedJson witness;
};

struct Report {
    std::string version = kToolVersion;
    std::string poly;  // canonical echo of the input
    int n = 0;
    OrderedJson certificates = OrderedJson::object();
    OrderedJson tables = OrderedJson::object();
    OrderedJson frobenius = OrderedJson::object();
    std::vector<CheckResult> checks;
    OrderedJson extra = OrderedJson::object();  // e.g. batch entries
    std::map<std::string, double> timings_ms;

    bool certificate_failed() const;
    bool any_check_failed() const;
    // 0 pass, 3 certificate failure, 4 any other failed check.
    int exit_code() const;
};

OrderedJson report_to_json(const Report& r);        // includes timings_ms
OrderedJson report_body_json(const Report& r);      // timings removed
Report report_from_json(const OrderedJson& j);      // round trip

// One CSV blob per table: header row, LF endings.
std::map<std::string, std::string> report_to_csv(const Report& r);

std::string report_to_pretty(const Report& r);

}  // namespace lgring
