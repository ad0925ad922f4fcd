#pragma once

// Range engine: memoized sigma sieve, cluster runs, converse witnesses,
// coincidence indices, and chunked parallel verification.
//
// Results never depend on worker count or chunk size.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "collatz/core.hpp"
#include "collatz/theorems.hpp"

namespace collatz {

inline constexpr std::uint32_t kUnresolvedSentinel = 0xFFFF'FFFFu;
inline constexpr std::uint32_t kOverflowSentinel = 0xFFFF'FFFEu;
inline constexpr std::uint32_t kMaxStepsLimit = 0xFFFF'FFFDu;

[[nodiscard]] std::uint32_t encode_sigma(SigmaValue v);
[[nodiscard]] SigmaValue decode_sigma(std::uint32_t raw);

// Dense sigma values over [start, start + size()).
class SigmaTable {
public:
    SigmaTable(std::uint64_t start, std::uint32_t max_steps, std::vector<std::uint32_t> raw);

    [[nodiscard]] std::uint64_t start() const { return start_; }
    [[nodiscard]] std::uint64_t size() const { return raw_.size(); }
    [[nodiscard]] std::uint64_t end() const { return start_ + raw_.size(); }
    [[nodiscard]] std::uint32_t max_steps() const { return max_steps_; }
    [[nodiscard]] std::span<const std::uint32_t> raw() const { return raw_; }

    [[nodiscard]] bool contains(u128 m) const { return m >= start_ && m < end(); }
    // Throws std::out_of_range outside the table.
    [[nodiscard]] SigmaValue at(u128 m) const;

    // Table value inside the range, direct evaluation outside it. The
    // returned lookup borrows *this.
    [[nodiscard]] SigmaLookup lookup() const;

    friend bool operator==(const SigmaTable&, const SigmaTable&) = default;

private:
    std::uint64_t start_;
    std::uint32_t max_steps_;
    std::vector<std::uint32_t> raw_;
};

struct SieveOptions {
    std::uint32_t max_steps = kDefaultMaxSteps;
    std::uint64_t chunk_size = 1u << 16;
    unsigned workers = 0;  // 0: hardware concurrency
};

// sigma over [lo, hi). A trajectory that drops onto an entry already
// finalized (earlier in its own chunk, or in a completed chunk) reuses it.
// Throws InvalidInput if lo == 0 or hi < lo.
[[nodiscard]] SigmaTable sieve_sigma(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

struct ClusterRun {
    std::uint64_t first = 0;
    std::uint64_t length = 0;
    std::uint32_t sigma = 0;

    friend bool operator==(const ClusterRun&, const ClusterRun&) = default;
};

// Maximal runs of equal finite sigma with length >= min_length (>= 2).
[[nodiscard]] std::vector<ClusterRun> find_clusters(const SigmaTable& table, std::uint64_t min_length);

// Least i >= 1 with T^i(a) = T^i(b); nullopt if none within max_steps.
// Throws OverflowError, and InvalidInput when a == b or either is zero.
[[nodiscard]] std::optional<std::uint32_t> coincidence_index(u128 a, u128 b,
                                                             std::uint32_t max_steps = kDefaultMaxSteps);

struct ConverseWitness {
    std::uint64_t n = 0;
    std::uint32_t sigma = 0;  // shared by 2n - 2 and 2n - 1
    std::uint32_t coincidence_index = 0;
    unsigned p = 0;  // of the odd member 2n - 1

    friend bool operator==(const ConverseWitness&, const ConverseWitness&) = default;
};

struct ConverseScan {
    std::uint64_t n_limit = 0;
    std::uint64_t candidates = 0;  // n in [4, n_limit] with C(n) = 0
    std::vector<ConverseWitness> witnesses;
};

// n in [4, n_limit] with C(n) = 0 whose pair (2n - 2, 2n - 1) still shares a
// finite sigma. Throws InvalidInput if n_limit < 4.
[[nodiscard]] ConverseScan find_converse_counterexamples(std::uint64_t n_limit, const SieveOptions& options = {});

// Checks `id` over index range [lo, hi). Sigma values come from one sieve over
// the span the statement consults; the index range is split into
// options.chunk_size pieces and merged in order.
[[nodiscard]] VerificationReport run_verification_suite(TheoremId id, std::uint64_t lo, std::uint64_t hi,
                                                        const SieveOptions& options = {});

// Enumerates a family and checks expected C values, closed forms against the
// recurrence, and the cluster statement each family feeds into.
[[nodiscard]] VerificationReport verify_family(FamilyId id, unsigned index_max, std::uint64_t m_max,
                                               std::uint32_t max_steps = kDefaultMaxSteps);

}  // namespace collatz
