#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "collatz/sieve_cache.hpp"

using namespace collatz;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("collatz_test_" + name);
}

}  // namespace

TEST(SieveCache, Crc32CheckValue) {
    const std::string check = "123456789";
    EXPECT_EQ(crc32_of(reinterpret_cast<const std::uint8_t*>(check.data()), check.size()), 0xCBF43926u);
}

TEST(SieveCache, ExactLayout) {
    const SigmaTable t(2, 10'000, {1, kUnresolvedSentinel, kOverflowSentinel});
    const auto bytes = encode_sieve_cache(t);
    ASSERT_EQ(bytes.size(), kCacheHeaderSize + 12 + 4);
    const std::vector<std::uint8_t> header{'C', 'S', 'V', '1', 0x01,
                                           2, 0, 0, 0, 0, 0, 0, 0,
                                           3, 0, 0, 0, 0, 0, 0, 0,
                                           0x10, 0x27, 0, 0};
    EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + kCacheHeaderSize), header);
    const std::vector<std::uint8_t> payload{1, 0, 0, 0, 0xFF, 0xFF, 0xFF, 0xFF, 0xFE, 0xFF, 0xFF, 0xFF};
    EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + kCacheHeaderSize, bytes.end() - 4), payload);
    const std::uint32_t crc = crc32_of(payload.data(), payload.size());
    EXPECT_EQ(bytes[bytes.size() - 4], crc & 0xFF);
    EXPECT_EQ(bytes[bytes.size() - 1], crc >> 24);
}

TEST(SieveCache, FileRoundTrip) {
    const SigmaTable t = sieve_sigma(2, 100'000);
    const auto path = temp_path("roundtrip.bin");
    write_sieve_cache(path, t);
    EXPECT_EQ(read_sieve_cache(path), t);
    std::filesystem::remove(path);
}

TEST(SieveCache, EmptyTable) {
    const SigmaTable t = sieve_sigma(7, 7);
    EXPECT_EQ(decode_sieve_cache(encode_sieve_cache(t)), t);
}

TEST(SieveCache, RejectsCorruption) {
    const auto good = encode_sieve_cache(sieve_sigma(2, 100));

    auto flipped = good;
    flipped[kCacheHeaderSize + 5] ^= 0x01;
    EXPECT_THROW((void)decode_sieve_cache(flipped), CacheError);

    auto magic = good;
    magic[0] = 'X';
    EXPECT_THROW((void)decode_sieve_cache(magic), CacheError);

    auto version = good;
    version[4] = 0x02;
    EXPECT_THROW((void)decode_sieve_cache(version), CacheError);

    auto truncated = good;
    truncated.resize(truncated.size() - 3);
    EXPECT_THROW((void)decode_sieve_cache(truncated), CacheError);

    auto extra = good;
    extra.push_back(0);
    EXPECT_THROW((void)decode_sieve_cache(extra), CacheError);

    EXPECT_THROW((void)decode_sieve_cache({}), CacheError);
    EXPECT_THROW((void)read_sieve_cache(temp_path("does_not_exist.bin")), CacheError);
}
