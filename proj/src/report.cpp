#include "collatz/report.hpp"

#include <sstream>

namespace collatz {

json big_int(u128 v) {
    if (fits_u64(v)) return static_cast<std::uint64_t>(v);
    return to_string(v);
}

json sigma_json(SigmaValue v) {
    if (v.is_finite()) return v.steps();
    return to_string(v);
}

json report_results(const VerificationReport& report) {
    json out;
    out["theorem"] = report.theorem;
    out["range"] = json::array({report.lo, report.hi});
    out["checked"] = report.checked;
    out["passed"] = report.passed;
    out["filtered"] = report.filtered;
    out["abstained"] = report.abstained;
    out["violation_count"] = report.violations.size();
    json abstentions = json::array();
    for (u128 a : report.abstentions) abstentions.push_back(big_int(a));
    out["abstentions"] = std::move(abstentions);
    json exceptional = json::array();
    for (u128 e : report.exceptional) exceptional.push_back(big_int(e));
    out["exceptional"] = std::move(exceptional);
    return out;
}

json report_violations(const VerificationReport& report) {
    json out = json::array();
    for (const Violation& v : report.violations) {
        json entry;
        entry["theorem"] = report.theorem;
        entry["index"] = big_int(v.index);
        entry["detail"] = v.detail;
        json sigmas = json::array();
        for (SigmaValue s : v.sigmas) sigmas.push_back(sigma_json(s));
        entry["sigmas"] = std::move(sigmas);
        out.push_back(std::move(entry));
    }
    return out;
}

json to_json(const ClusterRun& run) {
    return json{{"first", run.first}, {"length", run.length}, {"sigma", run.sigma}};
}

json to_json(const ConverseWitness& w) {
    return json{{"n", w.n}, {"sigma", w.sigma}, {"coincidence_index", w.coincidence_index}, {"p", w.p}};
}

json ReportEnvelope::to_json() const {
    json out;
    out["command"] = command;
    out["parameters"] = parameters;
    out["results"] = results;
    out["violations"] = violations;
    out["timing_ms"] = timing_ms;
    return out;
}

std::string clusters_csv(const std::vector<ClusterRun>& runs) {
    std::ostringstream out;
    out << "first,length,sigma\n";
    for (const auto& r : runs) out << r.first << ',' << r.length << ',' << r.sigma << '\n';
    return out.str();
}

std::string witnesses_csv(const std::vector<ConverseWitness>& witnesses) {
    std::ostringstream out;
    out << "n,sigma,coincidence_index\n";
    for (const auto& w : witnesses) out << w.n << ',' << w.sigma << ',' << w.coincidence_index << '\n';
    return out.str();
}

}  // namespace collatz
