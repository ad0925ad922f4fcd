#include "collatz/uint128.hpp"

#include <algorithm>

namespace collatz {

std::optional<u128> checked_pow(u128 base, unsigned exp) {
    u128 result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        auto next = checked_mul(result, base);
        if (!next) return std::nullopt;
        result = *next;
    }
    return result;
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<u128> parse_u128(std::string_view text) {
    if (text.empty()) return std::nullopt;
    u128 value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') return std::nullopt;
        auto scaled = checked_mul(value, 10);
        if (!scaled) return std::nullopt;
        auto next = checked_add(*scaled, static_cast<u128>(ch - '0'));
        if (!next) return std::nullopt;
        value = *next;
    }
    return value;
}

}  // namespace collatz
