#include "collatz/cfunc.hpp"

#include "collatz/core.hpp"

namespace collatz {

Bit c_recursive(u128 n) {
    if (n == 0) throw InvalidInput("C: n must be positive");
    Bit flips = 0;
    while (n != 1) {
        if ((n & 1) == 0) {
            n >>= 1;
            flips ^= 1;
        } else if (n > 3) {
            n &= 3;  // 2t odd-rule steps, even number of flips
        } else {
            n -= 2;  // 3 -> 1
            flips ^= 1;
        }
    }
    return flips;
}

Bit c_recursive_literal(u128 n) {
    if (n == 0) throw InvalidInput("C: n must be positive");
    Bit flips = 0;
    while (n != 1) {
        n = (n & 1) ? n - 2 : n >> 1;
        flips ^= 1;
    }
    return flips;
}

Bit c_from_case(unsigned s, unsigned u) {
    return (s == 0 && u == 3) || (s == 1 && u == 1) ? 1 : 0;
}

Bit c_closed(u128 n) {
    const unsigned j = v2(n);
    const auto u = static_cast<unsigned>((n >> j) & 3);
    return c_from_case(j & 1, u);
}

bool c_prop1_checks(u128 n) {
    if (n == 0) throw InvalidInput("C: n must be positive");
    if (n > kU128Max / 4 - 1) throw InvalidInput("c_prop1_checks: 4n exceeds 128 bits");
    const Bit cn = c_recursive(n);
    const Bit c2nm1 = c_recursive(2 * n - 1);
    return c_recursive(2 * n) == 1 - cn
        && c_recursive(4 * n) == cn
        && c_recursive(2 * n + 1) == 1 - c2nm1
        && c_recursive(2 * n + 3) == c2nm1;
}

bool c_prop2_check(u128 n) {
    const unsigned j = v2(n);
    const u128 k = n >> j;
    const Bit cn = c_recursive(n);
    const Bit ck = c_recursive(k);
    return (j % 2 == 0) ? cn == ck : cn == 1 - ck;
}

}  // namespace collatz
