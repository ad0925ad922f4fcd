#pragma once

// Executable statements about C, T and clusters of equal total stopping time.
//
// Every statement is checked one index at a time (check_at) and aggregated
// over half-open ranges into a VerificationReport. The index means n for the
// statements about pairs (2n - 2, 2n - 1), m for the iterate identities, and
// i for the cluster corollaries.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/cfunc.hpp"
#include "collatz/core.hpp"

namespace collatz {

class EquivalenceViolation : public std::logic_error {
public:
    EquivalenceViolation(u128 witness, const std::string& what) : std::logic_error(what), witness_(witness) {}
    [[nodiscard]] u128 witness() const { return witness_; }

private:
    u128 witness_;
};

class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Iterates of m and m - 1 for odd m

struct Theorem1Classification {
    u128 m = 0;
    unsigned tp_mod4 = 0;  // T^p(m) mod 4, from 3^p (2q+1) - 1
    bool same_parity = false;  // p = q (mod 2)
    Bit c_of_n = 0;

    [[nodiscard]] bool equivalent() const {
        return (tp_mod4 == 0) == same_parity && same_parity == (c_of_n == 1);
    }
};

// Computes the three predicates independently and throws EquivalenceViolation
// if they disagree.
[[nodiscard]] Theorem1Classification theorem1_classify(u128 m);

// Same, without the throw.
[[nodiscard]] Theorem1Classification theorem1_predicates(u128 m);

struct CoincidenceResult {
    u128 m = 0;
    unsigned steps = 0;  // p + 2
    bool coincides = false;
    u128 lhs = 0;  // T^{p+2}(m - 1)
    u128 rhs = 0;  // T^{p+2}(m)
};

// Throws OverflowError.
[[nodiscard]] CoincidenceResult theorem2_coincides(u128 m);

// The five iterate identities for m and m - 1 up to step p. Throws
// OverflowError when the closed forms leave 128 bits.
[[nodiscard]] bool lemma1_check(u128 m);

// Whether T^i(2n - 2) = 1 for some 1 <= i <= p + 1. Requires C(n) = 1 and n >= 2.
[[nodiscard]] bool lemma2_is_exceptional(u128 n);

using SigmaLookup = std::function<SigmaValue(u128)>;

[[nodiscard]] SigmaLookup direct_sigma(std::uint32_t max_steps = kDefaultMaxSteps);

// sigma(2n - 2) == sigma(2n - 1), counting "both unresolved" as equal.
// Requires n >= 4 and C(n) = 1.
[[nodiscard]] bool corollary2_cluster_predicate(u128 n, std::uint32_t max_steps = kDefaultMaxSteps);

// The first four iterates of 32i + 17 and 32i + 18 against their closed forms.
[[nodiscard]] bool corollary8_prefix_check(u128 i);

// ---------------------------------------------------------------------------
// Statements and reports

enum class TheoremId { T1, T2, Lemma1, Lemma2, C2, C3, C4, C5, C6, C7, C8, Prop1, Prop2, Prop3, CEq };

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::T1, TheoremId::T2, TheoremId::Lemma1, TheoremId::Lemma2, TheoremId::C2,
    TheoremId::C3, TheoremId::C4, TheoremId::C5, TheoremId::C6, TheoremId::C7,
    TheoremId::C8, TheoremId::Prop1, TheoremId::Prop2, TheoremId::Prop3, TheoremId::CEq,
};

[[nodiscard]] std::string_view theorem_name(TheoremId id);
[[nodiscard]] std::optional<TheoremId> parse_theorem(std::string_view name);

// Interval of values sigma is looked up on when checking indices [lo, hi).
// Empty for statements that never consult sigma.
struct ValueSpan {
    u128 lo = 0;
    u128 hi = 0;
};
[[nodiscard]] ValueSpan sigma_span(TheoremId id, std::uint64_t lo, std::uint64_t hi);

struct Violation {
    u128 index = 0;
    std::string detail;
    std::vector<SigmaValue> sigmas;
};

struct CheckOutcome {
    enum class Verdict { Pass, Fail, Filtered, Abstain };
    Verdict verdict = Verdict::Pass;
    bool flagged = false;  // index belongs to the statement's exceptional set
    std::string detail;
    std::vector<SigmaValue> sigmas;
};

// All finite and equal: Pass. None finite: Abstain. Otherwise Fail.
[[nodiscard]] CheckOutcome check_equal_sigma(std::initializer_list<u128> values, const SigmaLookup& sigma);

[[nodiscard]] CheckOutcome check_at(TheoremId id, u128 index, const SigmaLookup& sigma);

struct VerificationReport {
    std::string theorem;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t checked = 0;  // indices whose hypotheses held
    std::uint64_t passed = 0;
    std::uint64_t filtered = 0;  // hypotheses failed, nothing to check
    std::uint64_t abstained = 0;
    std::vector<Violation> violations;
    std::vector<u128> abstentions;
    std::vector<u128> exceptional;

    [[nodiscard]] bool ok() const { return violations.empty(); }

    void record(u128 index, CheckOutcome outcome);
    // Appends a report over the adjacent range starting at this->hi.
    void append(VerificationReport&& next);
};

// Sequential check over [lo, hi).
[[nodiscard]] VerificationReport verify_range(TheoremId id, std::uint64_t lo, std::uint64_t hi,
                                              const SigmaLookup& sigma);

enum class CorollaryId { C3, C4, C5, C6, C7, C8 };

[[nodiscard]] TheoremId to_theorem(CorollaryId id);

// Direct sigma evaluation over i in [lo, hi).
[[nodiscard]] VerificationReport corollary_verify(CorollaryId id, std::uint64_t lo, std::uint64_t hi,
                                                  std::uint32_t max_steps = kDefaultMaxSteps);

// ---------------------------------------------------------------------------
// Parameterized families

enum class FamilyId { Garner1, Garner2a, Garner2b, Mersenne };

[[nodiscard]] std::string_view family_name(FamilyId id);
[[nodiscard]] std::optional<FamilyId> parse_family(std::string_view name);

struct FamilyMember {
    FamilyId family = FamilyId::Garner1;
    unsigned index = 0;  // i, j, or r
    std::uint64_t m = 0;  // grid parameter; 0 for Mersenne
    // Garner1: n1(i, m). Garner2a, Garner2b: i(j, m). Mersenne: n = 2^{2r-1}.
    u128 value = 0;
    // C(value), or C(9 value + 6) for Garner2b.
    Bit expected_c = 0;
    // Garner2a (j, m) = (0, 0), where i(j) = 1 is below the cluster hypothesis.
    bool excluded = false;
};

// Enumerates index in [0, index_max] (Mersenne: r in [1, index_max]) and
// m in [0, m_max], built from the two base cases and the step-two
// recurrence. Throws std::out_of_range if a member exceeds 128 bits.
[[nodiscard]] std::vector<FamilyMember> family_generate(FamilyId id, unsigned index_max, std::uint64_t m_max);

// Closed forms, for comparison against family_generate.
[[nodiscard]] std::optional<u128> garner1_closed(unsigned i, std::uint64_t m);
[[nodiscard]] std::optional<u128> garner2a_closed(unsigned j, std::uint64_t m);
// Defined for j >= 1 (the closed form has a 2^{j-1} factor).
[[nodiscard]] std::optional<u128> garner2b_closed(unsigned j, std::uint64_t m);
// 9 i(j, m) + 6 = 2^{j-1} (72m + 36 + 6 (-1)^{j+1}), valid for all j >= 0.
[[nodiscard]] std::optional<u128> garner2b_nine_i_plus_six(unsigned j, std::uint64_t m);

}  // namespace collatz
