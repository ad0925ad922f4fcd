#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace collatz {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~u128{0};

[[nodiscard]] inline std::optional<u128> checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
    return r;
}

[[nodiscard]] inline std::optional<u128> checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

// Checked a^e.
[[nodiscard]] std::optional<u128> checked_pow(u128 base, unsigned exp);

// Checked 2^e.
[[nodiscard]] inline std::optional<u128> pow2(unsigned exp) {
    if (exp >= 128) return std::nullopt;
    return u128{1} << exp;
}

[[nodiscard]] std::string to_string(u128 v);

// Parses a plain decimal literal. Rejects signs, whitespace, empty input and overflow.
[[nodiscard]] std::optional<u128> parse_u128(std::string_view text);

[[nodiscard]] inline bool fits_u64(u128 v) { return v <= UINT64_MAX; }

}  // namespace collatz
