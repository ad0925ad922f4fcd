#include "collatz/theorems.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace collatz {

namespace {

u128 require(std::optional<u128> v, const char* what) {
    if (!v) throw OverflowError(what);
    return *v;
}

// 3^i 2^e k - 1
std::optional<u128> lemma1_form(unsigned i, unsigned e, u128 k) {
    auto three = checked_pow(3, i);
    auto two = pow2(e);
    if (!three || !two) return std::nullopt;
    auto prod = checked_mul(*three, *two);
    if (!prod) return std::nullopt;
    prod = checked_mul(*prod, k);
    if (!prod) return std::nullopt;
    return *prod - 1;
}

CheckOutcome filtered() {
    CheckOutcome out;
    out.verdict = CheckOutcome::Verdict::Filtered;
    return out;
}

CheckOutcome verdict(bool ok, std::string detail = {}) {
    CheckOutcome out;
    out.verdict = ok ? CheckOutcome::Verdict::Pass : CheckOutcome::Verdict::Fail;
    out.detail = std::move(detail);
    return out;
}

CheckOutcome abstain(std::string detail) {
    CheckOutcome out;
    out.verdict = CheckOutcome::Verdict::Abstain;
    out.detail = std::move(detail);
    return out;
}

struct StatementInfo {
    TheoremId id;
    std::string_view name;
    std::uint64_t min_index;
    // sigma is consulted at scale * index + offset for each offset; scale 0 means never.
    std::int64_t scale;
    std::array<std::int64_t, 3> offsets;
    std::size_t offset_count;
};

constexpr StatementInfo kStatements[] = {
    {TheoremId::T1, "t1", 2, 0, {}, 0},
    {TheoremId::T2, "t2", 2, 0, {}, 0},
    {TheoremId::Lemma1, "lemma1", 3, 0, {}, 0},
    {TheoremId::Lemma2, "lemma2", 2, 0, {}, 0},
    {TheoremId::C2, "c2", 4, 2, {-2, -1, 0}, 2},
    {TheoremId::C3, "c3", 1, 8, {4, 5, 0}, 2},
    {TheoremId::C4, "c4", 1, 16, {2, 3, 0}, 2},
    {TheoremId::C5, "c5", 1, 8, {-2, -1, 0}, 2},
    {TheoremId::C6, "c6", 2, 4, {-2, -1, 0}, 2},
    {TheoremId::C7, "c7", 2, 8, {-4, -3, -2}, 3},
    {TheoremId::C8, "c8", 1, 32, {17, 18, 0}, 2},
    {TheoremId::Prop1, "prop1", 1, 0, {}, 0},
    {TheoremId::Prop2, "prop2", 1, 0, {}, 0},
    {TheoremId::Prop3, "prop3", 1, 0, {}, 0},
    {TheoremId::CEq, "ceq", 1, 0, {}, 0},
};

const StatementInfo& info(TheoremId id) {
    for (const auto& s : kStatements)
        if (s.id == id) return s;
    throw std::logic_error("unknown theorem id");
}

}  // namespace

// All finite and equal: pass. None finite: abstain. Anything else: fail.
CheckOutcome check_equal_sigma(std::initializer_list<u128> values, const SigmaLookup& sigma) {
    CheckOutcome out;
    std::vector<std::pair<u128, SigmaValue>> seen;
    for (u128 v : values) seen.emplace_back(v, sigma(v));
    const auto finite = std::count_if(seen.begin(), seen.end(), [](const auto& e) { return e.second.is_finite(); });
    for (const auto& e : seen) out.sigmas.push_back(e.second);
    std::ostringstream detail;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (i) detail << ' ';
        detail << "sigma(" << to_string(seen[i].first) << ")=" << to_string(seen[i].second);
    }
    out.detail = detail.str();
    if (finite == 0) {
        out.verdict = CheckOutcome::Verdict::Abstain;
    } else if (static_cast<std::size_t>(finite) == seen.size()
               && std::all_of(seen.begin(), seen.end(), [&](const auto& e) { return e.second == seen.front().second; })) {
        out.verdict = CheckOutcome::Verdict::Pass;
    } else {
        out.verdict = CheckOutcome::Verdict::Fail;
    }
    return out;
}

Theorem1Classification theorem1_predicates(u128 m) {
    const OddDecomposition d = decompose_odd(m);
    Theorem1Classification c;
    c.m = m;
    // 3^p = (-1)^p (mod 4), and 2q + 1 = u (mod 4)
    const unsigned three_pow = (d.p % 2 == 0) ? 1 : 3;
    c.tp_mod4 = (three_pow * d.u + 3) % 4;
    c.same_parity = (d.p % 2) == static_cast<unsigned>(d.q % 2);
    c.c_of_n = c_closed(d.n);
    return c;
}

Theorem1Classification theorem1_classify(u128 m) {
    Theorem1Classification c = theorem1_predicates(m);
    if (!c.equivalent()) {
        std::ostringstream msg;
        msg << "theorem 1 equivalence fails at m=" << to_string(m) << ": T^p(m) mod 4=" << c.tp_mod4
            << " same_parity=" << c.same_parity << " C(n)=" << c.c_of_n;
        throw EquivalenceViolation(m, msg.str());
    }
    return c;
}

CoincidenceResult theorem2_coincides(u128 m) {
    const OddDecomposition d = decompose_odd(m);
    CoincidenceResult r;
    r.m = m;
    r.steps = d.p + 2;
    r.lhs = require(iterate(m - 1, r.steps), "theorem2_coincides: T^{p+2}(m-1) overflows");
    r.rhs = require(iterate(m, r.steps), "theorem2_coincides: T^{p+2}(m) overflows");
    r.coincides = r.lhs == r.rhs;
    return r;
}

bool lemma1_check(u128 m) {
    const OddDecomposition d = decompose_odd(m);
    const unsigned p = d.p;
    const u128 k = d.k;

    u128 odd = m;
    for (unsigned i = 0; i <= p; ++i) {
        if (odd != require(lemma1_form(i, p - i, k), "lemma1_check: closed form overflows")) return false;
        if (i < p) odd = require(collatz_t(odd), "lemma1_check: iterate overflows");
    }
    const u128 tp_odd = odd;

    u128 even = require(collatz_t(m - 1), "lemma1_check: iterate overflows");
    if (even != require(pow2(p - 1), "lemma1_check: closed form overflows") * k - 1) return false;
    for (unsigned i = 1; i <= p; ++i) {
        if (even != require(lemma1_form(i - 1, p - i, k), "lemma1_check: closed form overflows")) return false;
        if (i < p) even = require(collatz_t(even), "lemma1_check: iterate overflows");
    }
    const u128 tp_even = even;

    auto three_even = checked_mul(tp_even, 3);
    if (!three_even || *three_even + 2 != tp_odd) return false;
    if ((tp_odd & 1) || (tp_even & 1)) return false;
    const bool part4 = ((tp_even % 4) == 2) == ((tp_odd % 4) == 0);
    const bool part5 = ((tp_even % 4) == 0) == ((tp_odd % 4) == 2);
    return part4 && part5;
}

bool lemma2_is_exceptional(u128 n) {
    if (n < 2) throw PreconditionViolation("lemma2_is_exceptional: n must be >= 2");
    if (c_closed(n) != 1) throw PreconditionViolation("lemma2_is_exceptional: requires C(n) = 1");
    const OddDecomposition d = decompose_odd(2 * n - 1);
    u128 x = d.m - 1;
    for (unsigned i = 1; i <= d.p + 1; ++i) {
        x = require(collatz_t(x), "lemma2_is_exceptional: iterate overflows");
        if (x == 1) return true;
    }
    return false;
}

SigmaLookup direct_sigma(std::uint32_t max_steps) {
    return [max_steps](u128 v) { return total_stopping_time(v, max_steps); };
}

bool corollary2_cluster_predicate(u128 n, std::uint32_t max_steps) {
    if (n < 4) throw PreconditionViolation("corollary2_cluster_predicate: n must be >= 4");
    if (c_closed(n) != 1) throw PreconditionViolation("corollary2_cluster_predicate: requires C(n) = 1");
    return total_stopping_time(2 * n - 2, max_steps) == total_stopping_time(2 * n - 1, max_steps);
}

bool corollary8_prefix_check(u128 i) {
    if (i < 1) throw PreconditionViolation("corollary8_prefix_check: i must be >= 1");
    const u128 odd = 32 * i + 17;
    const u128 even = odd + 1;
    const std::array<u128, 4> odd_expected{48 * i + 26, 24 * i + 13, 36 * i + 20, 18 * i + 10};
    const std::array<u128, 4> even_expected{16 * i + 9, 24 * i + 14, 12 * i + 7, 18 * i + 11};
    u128 a = odd;
    u128 b = even;
    for (std::size_t step = 0; step < 4; ++step) {
        a = require(collatz_t(a), "corollary8_prefix_check: iterate overflows");
        b = require(collatz_t(b), "corollary8_prefix_check: iterate overflows");
        if (a != odd_expected[step] || b != even_expected[step]) return false;
    }
    return true;
}

std::string_view theorem_name(TheoremId id) { return info(id).name; }

std::optional<TheoremId> parse_theorem(std::string_view name) {
    for (const auto& s : kStatements)
        if (s.name == name) return s.id;
    return std::nullopt;
}

ValueSpan sigma_span(TheoremId id, std::uint64_t lo, std::uint64_t hi) {
    const StatementInfo& s = info(id);
    lo = std::max(lo, s.min_index);
    if (s.scale == 0 || lo >= hi) return {};
    const auto [min_off, max_off] = std::minmax_element(s.offsets.begin(), s.offsets.begin() + s.offset_count);
    const auto scale = static_cast<u128>(s.scale);
    // Every offset is >= -4 and every scale * min_index exceeds 4, so nothing goes negative.
    const u128 first = scale * lo + static_cast<u128>(static_cast<__int128>(*min_off));
    const u128 last = scale * (hi - 1) + static_cast<u128>(static_cast<__int128>(*max_off));
    return {first, last + 1};
}

CheckOutcome check_at(TheoremId id, u128 index, const SigmaLookup& sigma) {
    if (index < info(id).min_index) return filtered();
    try {
        switch (id) {
            case TheoremId::T1: {
                const u128 m = 2 * index - 1;
                const Theorem1Classification c = theorem1_predicates(m);
                std::ostringstream detail;
                detail << "T^p(m) mod 4=" << c.tp_mod4 << " same_parity=" << c.same_parity << " C(n)=" << c.c_of_n;
                if (!c.equivalent()) return verdict(false, detail.str());
                // Cross-check the closed-form residue against the actual iterate.
                auto tp = iterate(m, decompose_odd(m).p);
                if (!tp) return abstain("T^p(m) overflows");
                detail << " iterate mod 4=" << static_cast<unsigned>(*tp % 4);
                return verdict(static_cast<unsigned>(*tp % 4) == c.tp_mod4, detail.str());
            }
            case TheoremId::T2: {
                const CoincidenceResult r = theorem2_coincides(2 * index - 1);
                const Bit c = c_closed(index);
                std::ostringstream detail;
                detail << "T^" << r.steps << "(m-1)=" << to_string(r.lhs) << " T^" << r.steps
                       << "(m)=" << to_string(r.rhs) << " C(n)=" << c;
                return verdict(r.coincides == (c == 1), detail.str());
            }
            case TheoremId::Lemma1:
                if ((index & 1) == 0) return filtered();
                return verdict(lemma1_check(index));
            case TheoremId::Lemma2: {
                if (c_closed(index) != 1) return filtered();
                const bool exceptional = lemma2_is_exceptional(index);
                CheckOutcome out = verdict(exceptional == (index == 2 || index == 3),
                                           exceptional ? "exceptional" : "not exceptional");
                out.flagged = exceptional;
                return out;
            }
            case TheoremId::C2:
                if (c_closed(index) != 1) return filtered();
                return check_equal_sigma({2 * index - 2, 2 * index - 1}, sigma);
            case TheoremId::C3:
                return check_equal_sigma({8 * index + 4, 8 * index + 5}, sigma);
            case TheoremId::C4:
                return check_equal_sigma({16 * index + 2, 16 * index + 3}, sigma);
            case TheoremId::C5:
                if (c_closed(index) != 1) return filtered();
                return check_equal_sigma({8 * index - 2, 8 * index - 1}, sigma);
            case TheoremId::C6:
                if (c_closed(index) != 0) return filtered();
                return check_equal_sigma({4 * index - 2, 4 * index - 1}, sigma);
            case TheoremId::C7:
                if (c_closed(index) != 0) return filtered();
                return check_equal_sigma({8 * index - 4, 8 * index - 3, 8 * index - 2}, sigma);
            case TheoremId::C8: {
                if (c_closed(9 * index + 6) != 1) return filtered();
                CheckOutcome out = check_equal_sigma({32 * index + 17, 32 * index + 18}, sigma);
                if (!corollary8_prefix_check(index)) {
                    out.verdict = CheckOutcome::Verdict::Fail;
                    out.detail += " prefix iterates mismatch";
                }
                return out;
            }
            case TheoremId::Prop1:
                return verdict(c_prop1_checks(index));
            case TheoremId::Prop2:
                return verdict(c_prop2_check(index));
            case TheoremId::Prop3: {
                const unsigned j = v2(index);
                const auto u = static_cast<unsigned>((index >> j) & 3);
                return verdict(c_recursive(index) == c_from_case(j & 1, u));
            }
            case TheoremId::CEq: {
                const Bit closed = c_closed(index);
                const Bit rec = c_recursive(index);
                return verdict(closed == rec, "closed=" + std::to_string(closed) + " recursive=" + std::to_string(rec));
            }
        }
    } catch (const OverflowError& e) {
        return abstain(e.what());
    }
    throw std::logic_error("unhandled theorem id");
}

void VerificationReport::record(u128 index, CheckOutcome outcome) {
    using V = CheckOutcome::Verdict;
    if (outcome.verdict == V::Filtered) {
        ++filtered;
        return;
    }
    ++checked;
    if (outcome.flagged) exceptional.push_back(index);
    switch (outcome.verdict) {
        case V::Pass: ++passed; break;
        case V::Abstain:
            ++abstained;
            abstentions.push_back(index);
            break;
        case V::Fail:
            violations.push_back({index, std::move(outcome.detail), std::move(outcome.sigmas)});
            break;
        case V::Filtered: break;
    }
}

void VerificationReport::append(VerificationReport&& next) {
    hi = next.hi;
    checked += next.checked;
    passed += next.passed;
    filtered += next.filtered;
    abstained += next.abstained;
    auto move_into = [](auto& dst, auto& src) {
        dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
    };
    move_into(violations, next.violations);
    move_into(abstentions, next.abstentions);
    move_into(exceptional, next.exceptional);
}

VerificationReport verify_range(TheoremId id, std::uint64_t lo, std::uint64_t hi, const SigmaLookup& sigma) {
    VerificationReport report;
    report.theorem = std::string(theorem_name(id));
    report.lo = lo;
    report.hi = std::max(lo, hi);
    for (std::uint64_t index = lo; index < hi; ++index) report.record(index, check_at(id, index, sigma));
    return report;
}

TheoremId to_theorem(CorollaryId id) {
    switch (id) {
        case CorollaryId::C3: return TheoremId::C3;
        case CorollaryId::C4: return TheoremId::C4;
        case CorollaryId::C5: return TheoremId::C5;
        case CorollaryId::C6: return TheoremId::C6;
        case CorollaryId::C7: return TheoremId::C7;
        case CorollaryId::C8: return TheoremId::C8;
    }
    throw std::logic_error("unknown corollary id");
}

VerificationReport corollary_verify(CorollaryId id, std::uint64_t lo, std::uint64_t hi, std::uint32_t max_steps) {
    return verify_range(to_theorem(id), lo, hi, direct_sigma(max_steps));
}

// ---------------------------------------------------------------------------

std::string_view family_name(FamilyId id) {
    switch (id) {
        case FamilyId::Garner1: return "garner1";
        case FamilyId::Garner2a: return "garner2a";
        case FamilyId::Garner2b: return "garner2b";
        case FamilyId::Mersenne: return "mersenne";
    }
    return "?";
}

std::optional<FamilyId> parse_family(std::string_view name) {
    for (FamilyId id : {FamilyId::Garner1, FamilyId::Garner2a, FamilyId::Garner2b, FamilyId::Mersenne})
        if (family_name(id) == name) return id;
    return std::nullopt;
}

namespace {

// 2^e (4m + 2 + (-1)^sign_exp)
std::optional<u128> garner_form(unsigned e, std::uint64_t m, unsigned sign_exp) {
    const u128 inner = u128{4} * m + (sign_exp % 2 == 0 ? 3 : 1);
    auto scale = pow2(e);
    if (!scale) return std::nullopt;
    return checked_mul(*scale, inner);
}

}  // namespace

std::optional<u128> garner1_closed(unsigned i, std::uint64_t m) { return garner_form(i, m, i); }

std::optional<u128> garner2a_closed(unsigned j, std::uint64_t m) { return garner_form(j, m, j + 1); }

std::optional<u128> garner2b_closed(unsigned j, std::uint64_t m) {
    if (j == 0) return std::nullopt;
    auto half = pow2(j - 1);
    if (!half) return std::nullopt;
    // 2^{j-1} (8m + 3 + (-1)^{j+1}) + (2^{j-1} (3 + (-1)^j) - 2) / 3
    const u128 first_inner = u128{8} * m + (j % 2 == 1 ? 4 : 2);
    auto first = checked_mul(*half, first_inner);
    auto second_scaled = checked_mul(*half, j % 2 == 0 ? 4 : 2);
    if (!first || !second_scaled) return std::nullopt;
    const u128 numerator = *second_scaled - 2;
    if (numerator % 3 != 0) return std::nullopt;
    return checked_add(*first, numerator / 3);
}

std::optional<u128> garner2b_nine_i_plus_six(unsigned j, std::uint64_t m) {
    auto scale = pow2(j);
    if (!scale) return std::nullopt;
    const u128 inner = u128{72} * m + (j % 2 == 1 ? 42 : 30);
    auto doubled = checked_mul(*scale, inner);
    if (!doubled) return std::nullopt;
    return *doubled / 2;
}

std::vector<FamilyMember> family_generate(FamilyId id, unsigned index_max, std::uint64_t m_max) {
    std::vector<FamilyMember> members;
    if (id == FamilyId::Mersenne) {
        if (index_max > 63) throw std::out_of_range("family_generate: Mersenne r must be <= 63 for 128-bit values");
        for (unsigned r = 1; r <= index_max; ++r) {
            FamilyMember fm;
            fm.family = id;
            fm.index = r;
            fm.value = u128{1} << (2 * r - 1);
            fm.expected_c = 1;
            members.push_back(fm);
        }
        return members;
    }

    struct Rule {
        u128 base0_scale, base0_offset, base1_scale, base1_offset, step_offset;
        Bit expected;
    };
    const Rule rule = [&] {
        switch (id) {
            case FamilyId::Garner1: return Rule{4, 3, 8, 2, 0, 1};
            case FamilyId::Garner2a: return Rule{4, 1, 8, 6, 0, 0};
            default: return Rule{4, 1, 8, 4, 2, 1};  // Garner2b: 9 i(j+2) + 6 = 4 (9 i(j) + 6)
        }
    }();

    std::vector<std::vector<u128>> by_m;
    by_m.reserve(m_max + 1);
    for (std::uint64_t m = 0; m <= m_max; ++m) {
        std::vector<u128> seq;
        for (unsigned idx = 0; idx <= index_max; ++idx) {
            if (idx == 0) {
                seq.push_back(rule.base0_scale * m + rule.base0_offset);
            } else if (idx == 1) {
                seq.push_back(rule.base1_scale * m + rule.base1_offset);
            } else {
                auto next = checked_mul(seq[idx - 2], 4);
                if (next) next = checked_add(*next, rule.step_offset);
                if (!next) throw std::out_of_range("family_generate: member exceeds 128 bits");
                seq.push_back(*next);
            }
        }
        by_m.push_back(std::move(seq));
    }
    for (unsigned idx = 0; idx <= index_max; ++idx) {
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            FamilyMember fm;
            fm.family = id;
            fm.index = idx;
            fm.m = m;
            fm.value = by_m[m][idx];
            fm.expected_c = rule.expected;
            fm.excluded = id == FamilyId::Garner2a && idx == 0 && m == 0;
            members.push_back(fm);
        }
    }
    return members;
}

}  // namespace collatz
