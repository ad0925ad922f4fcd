#include "collatz/core.hpp"

#include <bit>

namespace collatz {

std::string to_string(SigmaValue v) {
    switch (v.kind()) {
        case SigmaValue::Kind::Finite: return std::to_string(v.steps());
        case SigmaValue::Kind::Unresolved: return "unresolved";
        case SigmaValue::Kind::Overflow: return "overflow";
    }
    return "?";
}

std::optional<u128> collatz_t(u128 m) {
    if (m == 0) throw InvalidInput("collatz_t: m must be positive");
    if ((m & 1) == 0) return m >> 1;
    // (3m + 1) / 2 == m + (m + 1) / 2, but the contract is about 3m + 1 itself.
    auto tripled = checked_mul(m, 3);
    if (!tripled) return std::nullopt;
    auto bumped = checked_add(*tripled, 1);
    if (!bumped) return std::nullopt;
    return *bumped >> 1;
}

std::optional<u128> iterate(u128 m, std::uint64_t i) {
    if (m == 0) throw InvalidInput("iterate: m must be positive");
    u128 x = m;
    for (std::uint64_t step = 0; step < i; ++step) {
        auto next = collatz_t(x);
        if (!next) return std::nullopt;
        x = *next;
    }
    return x;
}

TrajectoryRecord trajectory(u128 m, std::uint32_t max_steps) {
    if (m == 0) throw InvalidInput("trajectory: m must be positive");
    TrajectoryRecord rec;
    rec.start = m;
    rec.iterates.push_back(m);
    u128 x = m;
    if (x == 1) {
        rec.status = TrajectoryStatus::ReachedOne;
        return rec;
    }
    for (std::uint32_t step = 0; step < max_steps; ++step) {
        auto next = collatz_t(x);
        if (!next) {
            rec.status = TrajectoryStatus::Overflow;
            return rec;
        }
        x = *next;
        rec.iterates.push_back(x);
        if (x == 1) {
            rec.status = TrajectoryStatus::ReachedOne;
            return rec;
        }
    }
    rec.status = TrajectoryStatus::BoundExceeded;
    return rec;
}

std::vector<std::uint8_t> parity_vector(u128 m, std::uint32_t length) {
    if (m == 0) throw InvalidInput("parity_vector: m must be positive");
    std::vector<std::uint8_t> bits;
    bits.reserve(length);
    u128 x = m;
    for (std::uint32_t i = 0; i < length; ++i) {
        bits.push_back(static_cast<std::uint8_t>(x & 1));
        if (i + 1 == length) break;
        auto next = collatz_t(x);
        if (!next) throw OverflowError("parity_vector: trajectory of " + to_string(m) + " overflows 128 bits");
        x = *next;
    }
    return bits;
}

SigmaValue total_stopping_time(u128 m, std::uint32_t max_steps) {
    if (m == 0) throw InvalidInput("total_stopping_time: m must be positive");
    u128 x = m;
    for (std::uint32_t steps = 0;; ++steps) {
        if (x == 1) return SigmaValue::finite(steps);
        if (steps == max_steps) return SigmaValue::unresolved();
        auto next = collatz_t(x);
        if (!next) return SigmaValue::overflow();
        x = *next;
    }
}

unsigned v2(u128 n) {
    if (n == 0) throw InvalidInput("v2: n must be positive");
    auto lo = static_cast<std::uint64_t>(n);
    if (lo != 0) return static_cast<unsigned>(std::countr_zero(lo));
    return 64 + static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(n >> 64)));
}

OddDecomposition decompose_odd(u128 m) {
    if ((m & 1) == 0 || m < 3) throw InvalidInput("decompose_odd: m must be odd and >= 3, got " + to_string(m));
    OddDecomposition d;
    d.m = m;
    d.n = (m >> 1) + 1;  // m + 1 may overflow at 2^128 - 1
    d.j = v2(d.n);
    d.p = d.j + 1;
    d.k = d.n >> d.j;
    d.q = d.k >> 1;
    d.r = d.j / 2;
    d.s = d.j % 2;
    d.t = d.k >> 2;
    d.u = static_cast<unsigned>(d.k & 3);
    return d;
}

}  // namespace collatz
