// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collatz/cfunc.hpp"
#include "collatz/core.hpp"
#include "collatz/report.hpp"
#include "collatz/scanner.hpp"
#include "collatz/sieve_cache.hpp"
#include "collatz/theorems.hpp"

using namespace collatz;

namespace {

struct Criterion {
    std::string name;
    double time_limit_s;  // <= 0: no limit
    std::function<bool(std::ostream&)> body;
};

bool expect(bool ok, std::ostream& why, const std::string& what) {
    if (!ok) why << what << "; ";
    return ok;
}

bool clean(const VerificationReport& r, std::ostream& why) {
    bool ok = expect(r.violations.empty(), why, r.theorem + ": " + std::to_string(r.violations.size()) + " violations");
    if (!r.violations.empty()) why << "first at " << to_string(r.violations.front().index) << " (" << r.violations.front().detail << "); ";
    return ok;
}

// sigma-consulting statements must resolve everything at this scale.
bool clean_no_abstain(const VerificationReport& r, std::ostream& why) {
    bool ok = clean(r, why);
    return expect(r.abstained == 0, why, r.theorem + ": " + std::to_string(r.abstained) + " abstentions") && ok;
}

std::string determinism_report(unsigned workers, std::uint64_t chunk) {
    const SieveOptions opts{kDefaultMaxSteps, chunk, workers};
    const SigmaTable table = sieve_sigma(2, 1'000'000, opts);
    const auto bytes = encode_sieve_cache(table);
    json doc;
    doc["sieve_crc"] = crc32_of(bytes.data(), bytes.size());
    doc["sieve_bytes"] = bytes.size();
    for (TheoremId id : {TheoremId::C2, TheoremId::T2, TheoremId::C7}) {
        // c2 over n < 500001 and c7 over i < 125001 consult values inside [2, 10^6)
        const std::uint64_t hi = id == TheoremId::C2 ? 500'001 : id == TheoremId::C7 ? 125'001 : 1'000'000;
        const VerificationReport r = run_verification_suite(id, 2, hi, opts);
        doc[std::string(theorem_name(id))] = {{"results", report_results(r)}, {"violations", report_violations(r)}};
    }
    std::string out = doc.dump();
    out.append(bytes.begin(), bytes.end());
    return out;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"AC-1 golden values", 1.0,
         [](std::ostream& why) {
             bool ok = true;
             auto sig = [](u128 m) { return total_stopping_time(m); };
             ok &= expect(sig(15) == SigmaValue::finite(12), why, "sigma(15)");
             ok &= expect(sig(14) == SigmaValue::finite(12), why, "sigma(14)");
             ok &= expect(sig(31) == SigmaValue::finite(67), why, "sigma(31)");
             ok &= expect(sig(30) == SigmaValue::finite(13), why, "sigma(30)");
             ok &= expect(sig(240) == SigmaValue::finite(16), why, "sigma(240)");
             ok &= expect(sig(241) == SigmaValue::finite(16), why, "sigma(241)");
             ok &= expect(coincidence_index(240, 241) == 10u, why, "coincidence_index(240,241)");
             const std::pair<u128, Bit> c_values[] = {{1, 0}, {2, 1}, {3, 1}, {4, 0}, {8, 1}, {16, 0}, {121, 0}};
             for (auto [n, c] : c_values) {
                 ok &= expect(c_closed(n) == c, why, "c_closed(" + to_string(n) + ")");
                 ok &= expect(c_recursive(n) == c, why, "c_recursive(" + to_string(n) + ")");
             }
             return ok;
         }},
        {"AC-2 C closed form equals recursion on [1, 1e7]", 30.0,
         [](std::ostream& why) {
             std::uint64_t mismatches = 0;
             for (u128 n = 1; n <= 10'000'000; ++n) mismatches += c_closed(n) != c_recursive(n);
             return expect(mismatches == 0, why, std::to_string(mismatches) + " mismatches");
         }},
        {"AC-3 Theorem 1 triple equivalence, n in [2, 1e6]", 60.0,
         [](std::ostream& why) {
             std::uint64_t thrown = 0;
             for (std::uint64_t n = 2; n <= 1'000'000; ++n) {
                 try {
                     (void)theorem1_classify(2 * n - 1);
                 } catch (const EquivalenceViolation&) {
                     ++thrown;
                 }
             }
             const auto r = run_verification_suite(TheoremId::T1, 2, 1'000'001);
             return expect(thrown == 0, why, std::to_string(thrown) + " EquivalenceViolation") & clean_no_abstain(r, why)
                    & expect(r.checked == 999'999, why, "checked count");
         }},
        {"AC-4 Theorem 2 biconditional, n in [2, 1e6]", 120.0,
         [](std::ostream& why) {
             std::uint64_t coincide = 0;
             std::uint64_t differ = 0;
             std::uint64_t bad = 0;
             for (std::uint64_t n = 2; n <= 1'000'000; ++n) {
                 const bool co = theorem2_coincides(2 * n - 1).coincides;
                 (co ? coincide : differ) += 1;
                 bad += co != (c_closed(n) == 1);
             }
             const auto r = run_verification_suite(TheoremId::T2, 2, 1'000'001);
             return expect(bad == 0, why, std::to_string(bad) + " violations") & clean_no_abstain(r, why)
                    & expect(coincide > 0 && differ > 0, why, "both directions exercised");
         }},
        {"AC-5 Lemma 1 identities, odd m in [3, 1e5]", 0,
         [](std::ostream& why) {
             const auto r = run_verification_suite(TheoremId::Lemma1, 3, 100'001);
             return clean_no_abstain(r, why) & expect(r.checked == 49'999, why, "checked count");
         }},
        {"AC-6 Lemma 2 exceptional set is {2, 3} on [2, 1e4]", 0,
         [](std::ostream& why) {
             const auto r = run_verification_suite(TheoremId::Lemma2, 2, 10'001);
             return clean(r, why) & expect(r.exceptional == std::vector<u128>{2, 3}, why, "exceptional set");
         }},
        {"AC-7 Corollary 2, n in [4, 1e6]", 0,
         [](std::ostream& why) {
             const auto r = run_verification_suite(TheoremId::C2, 4, 1'000'001);
             return clean_no_abstain(r, why) & expect(r.checked > 0, why, "nothing checked");
         }},
        {"AC-8 Corollaries 3-8, i in [1, 1e5]", 120.0,
         [](std::ostream& why) {
             bool ok = true;
             for (CorollaryId id : {CorollaryId::C3, CorollaryId::C4, CorollaryId::C5, CorollaryId::C6, CorollaryId::C7,
                                    CorollaryId::C8}) {
                 const auto r = run_verification_suite(to_theorem(id), 1, 100'001);
                 ok &= clean_no_abstain(r, why);
                 ok &= expect(r.checked + r.filtered == 100'000 && r.checked > 0, why, r.theorem + " coverage");
             }
             return ok;
         }},
        {"AC-9 smallest converse witness is n = 121", 0,
         [](std::ostream& why) {
             const auto to121 = find_converse_counterexamples(121);
             const auto to120 = find_converse_counterexamples(120);
             const auto to1e4 = find_converse_counterexamples(10'000);
             return expect(to121.witnesses.size() == 1 && to121.witnesses[0].n == 121, why, "search to 121")
                    & expect(to120.witnesses.empty(), why, "search to 120")
                    & expect(!to1e4.witnesses.empty() && to1e4.witnesses.front().n == 121, why, "smallest witness");
         }},
        {"AC-10 Garner families on i, j in [0, 20], m in [0, 100]", 0,
         [](std::ostream& why) {
             bool ok = true;
             for (const auto& fm : family_generate(FamilyId::Garner1, 20, 100))
                 ok &= expect(c_closed(fm.value) == 1, why, "C(n1)");
             for (const auto& fm : family_generate(FamilyId::Garner2a, 20, 100))
                 ok &= expect(c_closed(fm.value) == 0, why, "C(i(j))");
             for (const auto& fm : family_generate(FamilyId::Garner2b, 20, 100)) {
                 ok &= expect(c_closed(9 * fm.value + 6) == 1, why, "C(9i+6)");
                 if (fm.index >= 1) ok &= expect(garner2b_closed(fm.index, fm.m) == fm.value, why, "garner2b closed form");
             }
             for (FamilyId id : {FamilyId::Garner1, FamilyId::Garner2a, FamilyId::Garner2b})
                 ok &= clean_no_abstain(verify_family(id, 20, 100), why);
             return ok;
         }},
        {"AC-11 Mersenne family, r in [1, 30]", 0,
         [](std::ostream& why) {
             bool ok = true;
             for (unsigned r = 1; r <= 30; ++r) {
                 const u128 m = (u128{1} << (2 * r)) - 1;
                 ok &= expect(coincidence_index(m - 1, m) == 2 * r + 2, why, "coincidence r=" + std::to_string(r));
                 ok &= expect(c_closed(u128{1} << (2 * r - 1)) == 1, why, "C r=" + std::to_string(r));
             }
             return ok & clean(verify_family(FamilyId::Mersenne, 30, 0), why);
         }},
        {"AC-12 determinism across workers {1,2,8} and chunk sizes {4096, 65536}", 0,
         [](std::ostream& why) {
             const std::string reference = determinism_report(1, 65'536);
             bool ok = true;
             for (unsigned workers : {1u, 2u, 8u})
                 for (std::uint64_t chunk : {std::uint64_t{4096}, std::uint64_t{65'536}})
                     ok &= expect(determinism_report(workers, chunk) == reference, why,
                                  "workers=" + std::to_string(workers) + " chunk=" + std::to_string(chunk));
             return ok;
         }},
        {"AC-13 sieve cache round trip on [2, 1e5]", 0,
         [](std::ostream& why) {
             const SigmaTable table = sieve_sigma(2, 100'001);
             const auto path = std::filesystem::temp_directory_path() / "collatz_acceptance_cache.bin";
             write_sieve_cache(path, table);
             bool ok = true;
             try {
                 const SigmaTable back = read_sieve_cache(path);  // validates the CRC
                 ok &= expect(back == table, why, "values differ");
             } catch (const CacheError& e) {
                 ok = expect(false, why, e.what());
             }
             std::filesystem::remove(path);
             return ok;
         }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::ostringstream why;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.body(why);
        } catch (const std::exception& e) {
            why << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0 && secs > c.time_limit_s) {
            ok = false;
            why << "took " << secs << " s, limit " << c.time_limit_s << " s; ";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << timing << ")";
        if (!ok) std::cout << ": " << why.str();
        std::cout << std::endl;
        failures += ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
