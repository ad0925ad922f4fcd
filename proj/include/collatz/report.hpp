#pragma once

// JSON and CSV renderings of results. Integers that fit in 64 bits are JSON
// numbers; larger ones are decimal strings.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "collatz/scanner.hpp"

namespace collatz {

using json = nlohmann::ordered_json;

[[nodiscard]] json big_int(u128 v);
[[nodiscard]] json sigma_json(SigmaValue v);

// Everything except the violation list.
[[nodiscard]] json report_results(const VerificationReport& report);
[[nodiscard]] json report_violations(const VerificationReport& report);

[[nodiscard]] json to_json(const ClusterRun& run);
[[nodiscard]] json to_json(const ConverseWitness& w);

struct ReportEnvelope {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    json violations = json::array();
    std::int64_t timing_ms = 0;

    [[nodiscard]] json to_json() const;
};

[[nodiscard]] std::string clusters_csv(const std::vector<ClusterRun>& runs);
[[nodiscard]] std::string witnesses_csv(const std::vector<ConverseWitness>& witnesses);

}  // namespace collatz
