#pragma once

// The classifier C: Z+ -> {0, 1}.
//
//   C(1) = 0,  C(n) = 1 - C(n - 2) for odd n,  C(n) = 1 - C(n / 2) for even n.
//
// c_closed is the production evaluator; c_recursive follows the definition
// and serves as its oracle.

#include "collatz/uint128.hpp"

namespace collatz {

using Bit = unsigned;

// Follows the recursion, but batches runs of the odd rule n -> n - 2 four
// at a time: 2t applications flip the bit an even number of times, so the
// walk from n = 4t + u down to u leaves C unchanged. O(log n).
[[nodiscard]] Bit c_recursive(u128 n);

// Literal definition, one rule application per step. Linear in n; only for
// small n.
[[nodiscard]] Bit c_recursive_literal(u128 n);

// With j = v2(n), k = n / 2^j: C(n) = 1 iff (j mod 2, k mod 4) is (0, 3) or (1, 1).
[[nodiscard]] Bit c_closed(u128 n);

// C(2n) = 1 - C(n), C(4n) = C(n), C(2n+1) = 1 - C(2n-1), C(2n+3) = C(2n-1).
[[nodiscard]] bool c_prop1_checks(u128 n);

// C(n) = C(k) for even v2(n), C(n) = 1 - C(k) for odd v2(n).
[[nodiscard]] bool c_prop2_check(u128 n);

// The four-case (s, u) table: (0,1)->0, (0,3)->1, (1,1)->1, (1,3)->0.
[[nodiscard]] Bit c_from_case(unsigned s, unsigned u);

}  // namespace collatz
