#pragma once

// Exact Collatz map T (shortcut form), iterates, parity vectors, total
// stopping times, and the odd decomposition m = 2^p (2q + 1) - 1.
//
// All arithmetic is 128-bit and checked. Overflow is reported, never wrapped.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "collatz/uint128.hpp"

namespace collatz {

inline constexpr std::uint32_t kDefaultMaxSteps = 10'000;

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class TrajectoryStatus { ReachedOne, BoundExceeded, Overflow };

struct TrajectoryRecord {
    u128 start = 1;
    std::vector<u128> iterates;  // iterates[0] == start
    TrajectoryStatus status = TrajectoryStatus::BoundExceeded;
};

// Total stopping time, or one of two non-answers: not resolved within the
// step bound, or the trajectory left the 128-bit range first.
class SigmaValue {
public:
    enum class Kind : std::uint8_t { Finite, Unresolved, Overflow };

    static constexpr SigmaValue finite(std::uint32_t steps) { return SigmaValue(Kind::Finite, steps); }
    static constexpr SigmaValue unresolved() { return SigmaValue(Kind::Unresolved, 0); }
    static constexpr SigmaValue overflow() { return SigmaValue(Kind::Overflow, 0); }

    [[nodiscard]] constexpr Kind kind() const { return kind_; }
    [[nodiscard]] constexpr bool is_finite() const { return kind_ == Kind::Finite; }
    [[nodiscard]] constexpr bool is_unresolved() const { return kind_ == Kind::Unresolved; }
    [[nodiscard]] constexpr bool is_overflow() const { return kind_ == Kind::Overflow; }
    // Only meaningful when is_finite().
    [[nodiscard]] constexpr std::uint32_t steps() const { return steps_; }

    friend constexpr bool operator==(SigmaValue, SigmaValue) = default;

private:
    constexpr SigmaValue(Kind kind, std::uint32_t steps) : kind_(kind), steps_(steps) {}

    Kind kind_;
    std::uint32_t steps_;
};

[[nodiscard]] std::string to_string(SigmaValue v);

// T(m) = m/2 for even m, (3m+1)/2 for odd m. nullopt when 3m+1 overflows.
// Throws InvalidInput for m == 0.
[[nodiscard]] std::optional<u128> collatz_t(u128 m);

// T^i(m); T^0(m) = m. nullopt on overflow.
[[nodiscard]] std::optional<u128> iterate(u128 m, std::uint64_t i);

[[nodiscard]] TrajectoryRecord trajectory(u128 m, std::uint32_t max_steps);

// Entry i is T^i(m) mod 2. Throws OverflowError.
[[nodiscard]] std::vector<std::uint8_t> parity_vector(u128 m, std::uint32_t length);

// Streams the trajectory without storing it.
[[nodiscard]] SigmaValue total_stopping_time(u128 m, std::uint32_t max_steps = kDefaultMaxSteps);

// 2-adic valuation. Throws InvalidInput for n == 0.
[[nodiscard]] unsigned v2(u128 n);

struct OddDecomposition {
    u128 m = 0;  // odd, >= 3
    u128 n = 0;  // m = 2n - 1
    unsigned p = 0;  // 2^p || m + 1
    u128 q = 0;  // m = 2^p (2q + 1) - 1
    unsigned j = 0;  // p - 1, and 2^j || n
    u128 k = 0;  // 2q + 1, so n = 2^j k
    unsigned r = 0;  // j = 2r + s
    unsigned s = 0;
    u128 t = 0;  // k = 4t + u
    unsigned u = 0;
};

// Throws InvalidInput if m is even or m < 3.
[[nodiscard]] OddDecomposition decompose_odd(u128 m);

}  // namespace collatz
