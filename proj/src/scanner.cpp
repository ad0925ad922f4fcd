#include "collatz/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "collatz/parallel.hpp"

namespace collatz {

std::uint32_t encode_sigma(SigmaValue v) {
    switch (v.kind()) {
        case SigmaValue::Kind::Finite:
            if (v.steps() > kMaxStepsLimit) throw std::out_of_range("encode_sigma: value collides with a sentinel");
            return v.steps();
        case SigmaValue::Kind::Unresolved: return kUnresolvedSentinel;
        case SigmaValue::Kind::Overflow: return kOverflowSentinel;
    }
    return kUnresolvedSentinel;
}

SigmaValue decode_sigma(std::uint32_t raw) {
    if (raw == kUnresolvedSentinel) return SigmaValue::unresolved();
    if (raw == kOverflowSentinel) return SigmaValue::overflow();
    return SigmaValue::finite(raw);
}

SigmaTable::SigmaTable(std::uint64_t start, std::uint32_t max_steps, std::vector<std::uint32_t> raw)
    : start_(start), max_steps_(max_steps), raw_(std::move(raw)) {
    if (start_ == 0) throw InvalidInput("SigmaTable: start must be positive");
    if (max_steps_ > kMaxStepsLimit) throw InvalidInput("SigmaTable: max_steps collides with the sentinels");
    if (start_ + raw_.size() < start_) throw InvalidInput("SigmaTable: range exceeds 64 bits");
}

SigmaValue SigmaTable::at(u128 m) const {
    if (!contains(m)) throw std::out_of_range("SigmaTable::at: " + to_string(m) + " outside table");
    return decode_sigma(raw_[static_cast<std::size_t>(m - start_)]);
}

SigmaLookup SigmaTable::lookup() const {
    return [this](u128 m) {
        if (contains(m)) return decode_sigma(raw_[static_cast<std::size_t>(m - start_)]);
        return total_stopping_time(m, max_steps_);
    };
}

SigmaTable sieve_sigma(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
    if (lo == 0) throw InvalidInput("sieve_sigma: lo must be positive");
    if (hi < lo) throw InvalidInput("sieve_sigma: hi must be >= lo");
    if (options.max_steps > kMaxStepsLimit) throw InvalidInput("sieve_sigma: max_steps collides with the sentinels");
    const std::uint64_t count = hi - lo;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
    const std::uint64_t chunks = (count + chunk - 1) / chunk;
    const std::uint32_t max_steps = options.max_steps;

    std::vector<std::uint32_t> raw(count);
    std::vector<std::atomic<bool>> done(chunks);

    auto sigma_at = [&](std::uint64_t m, std::uint64_t own, std::uint64_t chunk_lo) -> SigmaValue {
        u128 x = m;
        bool memo = true;
        for (std::uint32_t steps = 0;; ++steps) {
            if (x == 1) return SigmaValue::finite(steps);
            if (memo && steps > 0 && x >= lo && x < hi) {
                const auto xi = static_cast<std::uint64_t>(x);
                const std::uint64_t owner = (xi - lo) / chunk;
                const bool finalized = owner == own ? (xi >= chunk_lo && xi < m)
                                                    : done[owner].load(std::memory_order_acquire);
                if (finalized) {
                    const SigmaValue rest = decode_sigma(raw[xi - lo]);
                    if (rest.is_finite()) {
                        const std::uint64_t total = std::uint64_t{steps} + rest.steps();
                        return total <= max_steps ? SigmaValue::finite(static_cast<std::uint32_t>(total))
                                                  : SigmaValue::unresolved();
                    }
                    if (rest.is_unresolved()) return SigmaValue::unresolved();
                    // Overflow step count unknown; finish by direct iteration.
                    memo = false;
                }
            }
            if (steps == max_steps) return SigmaValue::unresolved();
            auto next = collatz_t(x);
            if (!next) return SigmaValue::overflow();
            x = *next;
        }
    };

    for_each_chunk(static_cast<std::size_t>(chunks), options.workers, [&](std::size_t c) {
        const std::uint64_t chunk_lo = lo + c * chunk;
        const std::uint64_t chunk_hi = chunk_lo + std::min(chunk, hi - chunk_lo);
        for (std::uint64_t m = chunk_lo; m < chunk_hi; ++m) raw[m - lo] = encode_sigma(sigma_at(m, c, chunk_lo));
        done[c].store(true, std::memory_order_release);
    });
    return SigmaTable(lo, max_steps, std::move(raw));
}

std::vector<ClusterRun> find_clusters(const SigmaTable& table, std::uint64_t min_length) {
    if (min_length < 2) throw InvalidInput("find_clusters: min_length must be >= 2");
    std::vector<ClusterRun> runs;
    const auto raw = table.raw();
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i + 1;
        const SigmaValue v = decode_sigma(raw[i]);
        if (v.is_finite())
            while (j < raw.size() && raw[j] == raw[i]) ++j;
        if (j - i >= min_length) runs.push_back({table.start() + i, j - i, v.steps()});
        i = j;
    }
    return runs;
}

std::optional<std::uint32_t> coincidence_index(u128 a, u128 b, std::uint32_t max_steps) {
    if (a == 0 || b == 0) throw InvalidInput("coincidence_index: arguments must be positive");
    if (a == b) throw InvalidInput("coincidence_index: arguments must differ");
    for (std::uint32_t i = 1; i <= max_steps; ++i) {
        auto na = collatz_t(a);
        auto nb = collatz_t(b);
        if (!na || !nb) throw OverflowError("coincidence_index: trajectory overflows 128 bits");
        a = *na;
        b = *nb;
        if (a == b) return i;
    }
    return std::nullopt;
}

ConverseScan find_converse_counterexamples(std::uint64_t n_limit, const SieveOptions& options) {
    if (n_limit < 4) throw InvalidInput("find_converse_counterexamples: n_limit must be >= 4");
    const SigmaTable table = sieve_sigma(6, 2 * n_limit, options);
    ConverseScan scan;
    scan.n_limit = n_limit;
    for (std::uint64_t n = 4; n <= n_limit; ++n) {
        if (c_closed(n) != 0) continue;
        ++scan.candidates;
        const SigmaValue even = table.at(2 * n - 2);
        const SigmaValue odd = table.at(2 * n - 1);
        if (!even.is_finite() || even != odd) continue;
        ConverseWitness w;
        w.n = n;
        w.sigma = even.steps();
        w.p = decompose_odd(2 * n - 1).p;
        // Both reach 1 after sigma steps, so they meet no later than that.
        w.coincidence_index = coincidence_index(2 * n - 2, 2 * n - 1, w.sigma).value();
        scan.witnesses.push_back(w);
    }
    return scan;
}

VerificationReport run_verification_suite(TheoremId id, std::uint64_t lo, std::uint64_t hi,
                                          const SieveOptions& options) {
    hi = std::max(lo, hi);
    std::optional<SigmaTable> table;
    SigmaLookup sigma = direct_sigma(options.max_steps);
    const ValueSpan span = sigma_span(id, lo, hi);
    if (span.hi > span.lo && fits_u64(span.hi)) {
        table.emplace(sieve_sigma(static_cast<std::uint64_t>(span.lo), static_cast<std::uint64_t>(span.hi), options));
        sigma = table->lookup();
    }

    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
    const std::uint64_t chunks = (hi - lo + chunk - 1) / chunk;
    std::vector<VerificationReport> parts(chunks);
    for_each_chunk(static_cast<std::size_t>(chunks), options.workers, [&](std::size_t c) {
        const std::uint64_t part_lo = lo + c * chunk;
        parts[c] = verify_range(id, part_lo, part_lo + std::min(chunk, hi - part_lo), sigma);
    });

    VerificationReport report;
    report.theorem = std::string(theorem_name(id));
    report.lo = lo;
    report.hi = lo;
    for (auto& part : parts) report.append(std::move(part));
    report.hi = hi;
    return report;
}

VerificationReport verify_family(FamilyId id, unsigned index_max, std::uint64_t m_max, std::uint32_t max_steps) {
    const std::vector<FamilyMember> members = family_generate(id, index_max, m_max);
    const SigmaLookup sigma = direct_sigma(max_steps);

    VerificationReport report;
    report.theorem = "family:" + std::string(family_name(id));
    report.lo = 0;
    report.hi = members.size();

    for (const FamilyMember& fm : members) {
        std::ostringstream where;
        where << family_name(id) << "(" << fm.index << "," << fm.m << ")=" << to_string(fm.value);
        std::vector<std::string> failures;
        CheckOutcome cluster;
        cluster.verdict = CheckOutcome::Verdict::Filtered;

        try {
            switch (id) {
                case FamilyId::Garner1: {
                    if (garner1_closed(fm.index, fm.m) != fm.value) failures.push_back("closed form mismatch");
                    if (c_closed(fm.value) != fm.expected_c || c_recursive(fm.value) != fm.expected_c)
                        failures.push_back("C(n1) != 1");
                    if (fm.value >= 4) cluster = check_equal_sigma({2 * fm.value - 2, 2 * fm.value - 1}, sigma);
                    break;
                }
                case FamilyId::Garner2a: {
                    if (garner2a_closed(fm.index, fm.m) != fm.value) failures.push_back("closed form mismatch");
                    if (c_closed(fm.value) != fm.expected_c || c_recursive(fm.value) != fm.expected_c)
                        failures.push_back("C(i) != 0");
                    if (!fm.excluded && fm.value < 2) failures.push_back("member below 2 outside (0,0)");
                    if (!fm.excluded)
                        cluster = check_equal_sigma({8 * fm.value - 4, 8 * fm.value - 3, 8 * fm.value - 2}, sigma);
                    break;
                }
                case FamilyId::Garner2b: {
                    const u128 nine = 9 * fm.value + 6;
                    if (garner2b_nine_i_plus_six(fm.index, fm.m) != nine) failures.push_back("9i+6 closed form mismatch");
                    if (fm.index >= 1 && garner2b_closed(fm.index, fm.m) != fm.value)
                        failures.push_back("closed form mismatch");
                    if (c_closed(nine) != fm.expected_c || c_recursive(nine) != fm.expected_c)
                        failures.push_back("C(9i+6) != 1");
                    if (!corollary8_prefix_check(fm.value)) failures.push_back("prefix iterates mismatch");
                    cluster = check_equal_sigma({32 * fm.value + 17, 32 * fm.value + 18}, sigma);
                    break;
                }
                case FamilyId::Mersenne: {
                    const u128 m = (u128{1} << (2 * fm.index)) - 1;
                    if (c_closed(fm.value) != 1 || c_recursive(fm.value) != 1) failures.push_back("C(n) != 1");
                    if (!theorem2_coincides(m).coincides) failures.push_back("no coincidence at p+2");
                    const auto idx = coincidence_index(m - 1, m, max_steps);
                    if (idx != 2 * fm.index + 2) {
                        failures.push_back("coincidence index " + (idx ? std::to_string(*idx) : std::string("unresolved"))
                                           + " != " + std::to_string(2 * fm.index + 2));
                    }
                    if (fm.index >= 2) cluster = check_equal_sigma({m - 1, m}, sigma);
                    break;
                }
            }
        } catch (const OverflowError& e) {
            CheckOutcome out;
            out.verdict = CheckOutcome::Verdict::Abstain;
            out.detail = e.what();
            report.record(fm.value, std::move(out));
            continue;
        }

        CheckOutcome out;
        if (!failures.empty() || cluster.verdict == CheckOutcome::Verdict::Fail) {
            out.verdict = CheckOutcome::Verdict::Fail;
            std::ostringstream detail;
            detail << where.str();
            for (const auto& f : failures) detail << "; " << f;
            if (cluster.verdict == CheckOutcome::Verdict::Fail) detail << "; cluster: " << cluster.detail;
            out.detail = detail.str();
            out.sigmas = cluster.sigmas;
        } else if (cluster.verdict == CheckOutcome::Verdict::Abstain) {
            out.verdict = CheckOutcome::Verdict::Abstain;
        }
        report.record(fm.value, std::move(out));
    }
    return report;
}

}  // namespace collatz
