#pragma once

// Persistent sigma tables.
//
// Layout, all integers little-endian:
//   "CSV1"        4 bytes magic
//   0x01          version
//   start         u64
//   count         u64
//   max_steps     u32
//   payload       count x u32 (0xFFFFFFFF unresolved, 0xFFFFFFFE overflow)
//   crc32         u32, CRC-32 (ISO-HDLC) of the payload bytes

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "collatz/scanner.hpp"

namespace collatz {

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kCacheVersion = 0x01;
inline constexpr std::size_t kCacheHeaderSize = 4 + 1 + 8 + 8 + 4;

[[nodiscard]] std::vector<std::uint8_t> encode_sieve_cache(const SigmaTable& table);
// Throws CacheError on bad magic, unknown version, truncation, trailing bytes or CRC mismatch.
[[nodiscard]] SigmaTable decode_sieve_cache(const std::vector<std::uint8_t>& bytes);

void write_sieve_cache(const std::filesystem::path& path, const SigmaTable& table);
[[nodiscard]] SigmaTable read_sieve_cache(const std::filesystem::path& path);

[[nodiscard]] std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size);

}  // namespace collatz
