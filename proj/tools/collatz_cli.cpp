// collatz: compute, verify, scan, counterexamples, families.
//
// Exit codes: 0 all checks pass, 1 a mathematical violation was found,
// 2 usage or I/O error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "collatz/cfunc.hpp"
#include "collatz/core.hpp"
#include "collatz/report.hpp"
#include "collatz/scanner.hpp"
#include "collatz/sieve_cache.hpp"
#include "collatz/theorems.hpp"

namespace {

using namespace collatz;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HalfOpenRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

HalfOpenRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("range must look like A..B, got '" + text + "'");
    auto lo = parse_u128(std::string_view(text).substr(0, dots));
    auto hi = parse_u128(std::string_view(text).substr(dots + 2));
    if (!lo || !hi || !fits_u64(*lo) || !fits_u64(*hi)) throw UsageError("range bounds must be 64-bit integers: '" + text + "'");
    if (*lo < 1) throw UsageError("range start must be >= 1");
    if (*hi < *lo) throw UsageError("range end must be >= start");
    return {static_cast<std::uint64_t>(*lo), static_cast<std::uint64_t>(*hi)};
}

std::uint32_t resolve_max_steps(const std::optional<std::uint32_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("COLLATZ_MAX_STEPS"); env != nullptr && *env != '\0') {
        auto v = parse_u128(env);
        if (!v || *v > kMaxStepsLimit) throw UsageError(std::string("COLLATZ_MAX_STEPS is not a valid step bound: ") + env);
        return static_cast<std::uint32_t>(*v);
    }
    return kDefaultMaxSteps;
}

void write_json(const std::string& path, const ReportEnvelope& envelope) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CacheError("cannot open " + path + " for writing");
    out << envelope.to_json().dump(2) << '\n';
    if (!out) throw CacheError("write to " + path + " failed");
}

class Stopwatch {
public:
    [[nodiscard]] std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct CommonOptions {
    std::optional<std::uint32_t> max_steps;
    unsigned workers = 0;
    std::uint64_t chunk_size = 1u << 16;
    std::string json_path;

    [[nodiscard]] SieveOptions sieve() const { return {resolve_max_steps(max_steps), chunk_size, workers}; }
};

// ---------------------------------------------------------------------------

struct ComputeArgs {
    std::string m;
    bool show_trajectory = false;
};

int run_compute(const ComputeArgs& args, const CommonOptions& common) {
    Stopwatch clock;
    auto parsed = parse_u128(args.m);
    if (!parsed || *parsed == 0) throw UsageError("m must be a positive integer below 2^128, got '" + args.m + "'");
    const u128 m = *parsed;
    const std::uint32_t max_steps = resolve_max_steps(common.max_steps);

    ReportEnvelope env;
    env.command = "compute";
    env.parameters = {{"m", big_int(m)}, {"max_steps", max_steps}, {"show_trajectory", args.show_trajectory}};

    const SigmaValue sigma = total_stopping_time(m, max_steps);
    std::cout << "m = " << to_string(m) << '\n' << "sigma = " << to_string(sigma) << '\n';
    env.results["m"] = big_int(m);
    env.results["sigma"] = sigma_json(sigma);

    if ((m & 1) == 1 && m >= 3) {
        const OddDecomposition d = decompose_odd(m);
        const Bit c = c_closed(d.n);
        std::cout << "p = " << d.p << "\nq = " << to_string(d.q) << "\nn = " << to_string(d.n) << "\nj = " << d.j
                  << "\nk = " << to_string(d.k) << "\nr = " << d.r << "\ns = " << d.s << "\nt = " << to_string(d.t)
                  << "\nu = " << d.u << "\nC(" << to_string(d.n) << ") = " << c << '\n';
        env.results["decomposition"] = {{"p", d.p}, {"q", big_int(d.q)}, {"n", big_int(d.n)}, {"j", d.j},
                                        {"k", big_int(d.k)}, {"r", d.r}, {"s", d.s}, {"t", big_int(d.t)}, {"u", d.u}};
        env.results["c_of_n"] = c;
        try {
            const CoincidenceResult r = theorem2_coincides(m);
            std::cout << "T^" << r.steps << "(m-1) = " << to_string(r.lhs) << ", T^" << r.steps << "(m) = "
                      << to_string(r.rhs) << (r.coincides ? " (coincide)" : " (differ)") << '\n';
            env.results["coincides_at_p_plus_2"] = r.coincides;
        } catch (const OverflowError&) {
            env.results["coincides_at_p_plus_2"] = "overflow";
        }
    }

    if (args.show_trajectory) {
        const TrajectoryRecord rec = trajectory(m, max_steps);
        json iterates = json::array();
        std::cout << "trajectory:";
        for (u128 x : rec.iterates) {
            std::cout << ' ' << to_string(x);
            iterates.push_back(big_int(x));
        }
        std::cout << '\n';
        env.results["trajectory"] = std::move(iterates);
        env.results["trajectory_status"] = rec.status == TrajectoryStatus::ReachedOne      ? "reached_one"
                                           : rec.status == TrajectoryStatus::BoundExceeded ? "bound_exceeded"
                                                                                           : "overflow";
    }
    env.timing_ms = clock.elapsed_ms();
    write_json(common.json_path, env);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string theorem;
    std::string range;
};

int run_verify(const VerifyArgs& args, const CommonOptions& common) {
    Stopwatch clock;
    const auto id = parse_theorem(args.theorem);
    if (!id) throw UsageError("unknown theorem '" + args.theorem + "'");
    const HalfOpenRange range = parse_range(args.range);
    const SieveOptions options = common.sieve();

    const VerificationReport report = run_verification_suite(*id, range.lo, range.hi, options);

    ReportEnvelope env;
    env.command = "verify";
    env.parameters = {{"theorem", args.theorem}, {"range", args.range}, {"max_steps", options.max_steps}};
    env.results = report_results(report);
    env.violations = report_violations(report);
    env.timing_ms = clock.elapsed_ms();

    std::cout << report.theorem << " over [" << report.lo << ", " << report.hi << "): checked " << report.checked
              << ", passed " << report.passed << ", filtered " << report.filtered << ", abstained " << report.abstained
              << ", violations " << report.violations.size() << '\n';
    if (!report.exceptional.empty()) {
        std::cout << "exceptional:";
        for (u128 e : report.exceptional) std::cout << ' ' << to_string(e);
        std::cout << '\n';
    }
    if (!report.abstentions.empty()) {
        std::cout << "abstentions:";
        for (u128 a : report.abstentions) std::cout << ' ' << to_string(a);
        std::cout << '\n';
    }
    for (const Violation& v : report.violations)
        std::cout << "VIOLATION at " << to_string(v.index) << ": " << v.detail << '\n';

    write_json(common.json_path, env);
    return report.ok() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct ScanArgs {
    std::string range;
    std::uint64_t min_cluster = 2;
    std::string out_path;
    std::string cache_path;
};

int run_scan(const ScanArgs& args, const CommonOptions& common) {
    Stopwatch clock;
    const HalfOpenRange range = parse_range(args.range);
    if (args.min_cluster < 2) throw UsageError("--min-cluster must be >= 2");
    const SieveOptions options = common.sieve();

    std::optional<SigmaTable> table;
    bool from_cache = false;
    if (!args.cache_path.empty() && std::filesystem::exists(args.cache_path)) {
        SigmaTable cached = read_sieve_cache(args.cache_path);
        if (cached.start() == range.lo && cached.end() == range.hi && cached.max_steps() == options.max_steps) {
            table.emplace(std::move(cached));
            from_cache = true;
        } else {
            std::cerr << "cache " << args.cache_path << " covers a different range or step bound; recomputing\n";
        }
    }
    if (!table) table.emplace(sieve_sigma(range.lo, range.hi, options));
    if (!args.cache_path.empty() && !from_cache) write_sieve_cache(args.cache_path, *table);

    const std::vector<ClusterRun> runs = find_clusters(*table, args.min_cluster);
    const std::string csv = clusters_csv(runs);
    if (args.out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(args.out_path, std::ios::trunc);
        if (!out) throw CacheError("cannot open " + args.out_path + " for writing");
        out << csv;
        if (!out) throw CacheError("write to " + args.out_path + " failed");
        std::cout << runs.size() << " cluster runs written to " << args.out_path << '\n';
    }

    ReportEnvelope env;
    env.command = "scan";
    env.parameters = {{"range", args.range}, {"min_cluster", args.min_cluster}, {"max_steps", options.max_steps}};
    json rows = json::array();
    for (const auto& r : runs) rows.push_back(to_json(r));
    std::uint64_t unresolved = 0;
    for (std::uint32_t v : table->raw()) unresolved += decode_sigma(v).is_finite() ? 0 : 1;
    env.results = {{"clusters", std::move(rows)}, {"unresolved", unresolved}};
    env.timing_ms = clock.elapsed_ms();
    write_json(common.json_path, env);
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run_counterexamples(std::uint64_t limit, const CommonOptions& common) {
    Stopwatch clock;
    if (limit < 4) throw UsageError("--limit must be >= 4");
    const SieveOptions options = common.sieve();
    const ConverseScan scan = find_converse_counterexamples(limit, options);

    std::cout << witnesses_csv(scan.witnesses);
    const double density = scan.candidates == 0 ? 0.0
                                                : static_cast<double>(scan.witnesses.size()) / static_cast<double>(scan.candidates);
    std::cerr << scan.witnesses.size() << " witnesses among " << scan.candidates << " n with C(n)=0 (density "
              << density << ")\n";

    ReportEnvelope env;
    env.command = "counterexamples";
    env.parameters = {{"limit", limit}, {"max_steps", options.max_steps}};
    json rows = json::array();
    json broken = json::array();
    for (const auto& w : scan.witnesses) {
        rows.push_back(to_json(w));
        // A witness merging by step p + 2 would contradict the coincidence theorem.
        if (w.coincidence_index <= w.p + 2) broken.push_back(to_json(w));
    }
    env.results = {{"candidates", scan.candidates}, {"witness_count", scan.witnesses.size()}, {"witnesses", std::move(rows)}};
    env.violations = broken;
    env.timing_ms = clock.elapsed_ms();
    write_json(common.json_path, env);
    return env.violations.empty() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct FamilyArgs {
    std::string family;
    unsigned i_max = 20;
    std::uint64_t m_max = 100;
};

int run_families(const FamilyArgs& args, const CommonOptions& common) {
    Stopwatch clock;
    const auto id = parse_family(args.family);
    if (!id) throw UsageError("unknown family '" + args.family + "'");
    const std::uint32_t max_steps = resolve_max_steps(common.max_steps);
    const std::vector<FamilyMember> members = family_generate(*id, args.i_max, args.m_max);
    const VerificationReport report = verify_family(*id, args.i_max, args.m_max, max_steps);

    if (*id == FamilyId::Mersenne) {
        std::cout << "r,m,n,C(n),coincidence_index\n";
        for (const auto& fm : members) {
            const u128 m = (u128{1} << (2 * fm.index)) - 1;
            const auto idx = coincidence_index(m - 1, m, max_steps);
            std::cout << fm.index << ',' << to_string(m) << ',' << to_string(fm.value) << ',' << c_closed(fm.value) << ','
                      << (idx ? std::to_string(*idx) : std::string("unresolved")) << '\n';
        }
    } else {
        std::cout << "index,m,value,expected_c\n";
        for (const auto& fm : members)
            std::cout << fm.index << ',' << fm.m << ',' << to_string(fm.value) << ',' << fm.expected_c << '\n';
    }
    std::cerr << report.theorem << ": checked " << report.checked << ", passed " << report.passed << ", abstained "
              << report.abstained << ", violations " << report.violations.size() << '\n';
    for (const Violation& v : report.violations) std::cerr << "VIOLATION: " << v.detail << '\n';

    ReportEnvelope env;
    env.command = "families";
    env.parameters = {{"family", args.family}, {"i_max", args.i_max}, {"m_max", args.m_max}, {"max_steps", max_steps}};
    env.results = report_results(report);
    env.violations = report_violations(report);
    env.timing_ms = clock.elapsed_ms();
    write_json(common.json_path, env);
    return report.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collatz cluster toolkit: total stopping times, the classifier C, and range verification"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    app.add_option("--max-steps", common.max_steps,
                   "Step bound for sigma (default 10000, or COLLATZ_MAX_STEPS when set; the flag wins)")
        ->check(CLI::Range(std::uint32_t{0}, kMaxStepsLimit));
    app.add_option("--workers", common.workers, "Worker threads for sieving and verification (0 = all cores)");
    app.add_option("--chunk-size", common.chunk_size, "Chunk size for parallel work (default 65536)")
        ->check(CLI::PositiveNumber);
    app.add_option("--json", common.json_path, "Write a JSON report envelope to PATH");

    ComputeArgs compute;
    auto* compute_cmd = app.add_subcommand("compute", "sigma, odd decomposition and C(n) for one integer");
    compute_cmd->add_option("m", compute.m, "Positive integer below 2^128")->required();
    compute_cmd->add_flag("--show-trajectory", compute.show_trajectory, "Print the trajectory");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check a statement over a half-open range A..B");
    verify_cmd
        ->add_option("--theorem", verify.theorem,
                     "t1, t2, lemma2, c2, prop1, prop2, prop3, ceq index n; lemma1 indexes odd m; c3..c8 index i")
        ->required();
    verify_cmd->add_option("--range", verify.range, "Half-open index range A..B")->required();

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Find runs of consecutive integers with equal sigma");
    scan_cmd->add_option("--range", scan.range, "Half-open range A..B")->required();
    scan_cmd->add_option("--min-cluster", scan.min_cluster, "Minimum run length (default 2)");
    scan_cmd->add_option("--out", scan.out_path, "CSV output path (default stdout)");
    scan_cmd->add_option("--cache", scan.cache_path, "Sieve cache file to load, or to create");

    std::uint64_t limit = 0;
    auto* cex_cmd = app.add_subcommand("counterexamples", "n <= N with C(n) = 0 whose pair still forms a cluster");
    cex_cmd->add_option("--limit", limit, "Largest n to examine")->required();

    FamilyArgs family;
    auto* fam_cmd = app.add_subcommand("families", "Enumerate and check a parameterized family");
    fam_cmd->add_option("--family", family.family, "garner1, garner2a, garner2b or mersenne")->required();
    fam_cmd->add_option("--i-max", family.i_max, "Largest index i, j or r (default 20)");
    fam_cmd->add_option("--m-max", family.m_max, "Largest grid parameter m (default 100)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*compute_cmd) return run_compute(compute, common);
        if (*verify_cmd) return run_verify(verify, common);
        if (*scan_cmd) return run_scan(scan, common);
        if (*cex_cmd) return run_counterexamples(limit, common);
        if (*fam_cmd) return run_families(family, common);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
