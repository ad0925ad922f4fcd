#include "collatz/sieve_cache.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <iterator>

namespace collatz {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'V', '1'};

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <class T>
T get_le(const std::uint8_t* p) {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(p[i]) << (8 * i);
    return value;
}

}  // namespace

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths
    while (size > 0) {
        const auto piece = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
        crc = crc32(crc, data, piece);
        data += piece;
        size -= piece;
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> encode_sieve_cache(const SigmaTable& table) {
    std::vector<std::uint8_t> out;
    out.reserve(kCacheHeaderSize + 4 * table.size() + 4);
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kCacheVersion);
    put_le<std::uint64_t>(out, table.start());
    put_le<std::uint64_t>(out, table.size());
    put_le<std::uint32_t>(out, table.max_steps());
    for (std::uint32_t v : table.raw()) put_le<std::uint32_t>(out, v);
    put_le<std::uint32_t>(out, crc32_of(out.data() + kCacheHeaderSize, out.size() - kCacheHeaderSize));
    return out;
}

SigmaTable decode_sieve_cache(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kCacheHeaderSize + 4) throw CacheError("sieve cache: truncated header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CacheError("sieve cache: bad magic");
    if (bytes[4] != kCacheVersion) throw CacheError("sieve cache: unsupported version " + std::to_string(bytes[4]));
    const auto start = get_le<std::uint64_t>(bytes.data() + 5);
    const auto count = get_le<std::uint64_t>(bytes.data() + 13);
    const auto max_steps = get_le<std::uint32_t>(bytes.data() + 21);
    const std::size_t payload_bytes = bytes.size() - kCacheHeaderSize - 4;
    if (count > payload_bytes / 4 || payload_bytes != count * 4)
        throw CacheError("sieve cache: payload size does not match count");
    const std::uint8_t* payload = bytes.data() + kCacheHeaderSize;
    const auto stored_crc = get_le<std::uint32_t>(payload + payload_bytes);
    if (crc32_of(payload, payload_bytes) != stored_crc) throw CacheError("sieve cache: CRC mismatch");
    std::vector<std::uint32_t> raw(count);
    for (std::size_t i = 0; i < count; ++i) raw[i] = get_le<std::uint32_t>(payload + 4 * i);
    try {
        return SigmaTable(start, max_steps, std::move(raw));
    } catch (const InvalidInput& e) {
        throw CacheError(std::string("sieve cache: ") + e.what());
    }
}

void write_sieve_cache(const std::filesystem::path& path, const SigmaTable& table) {
    const auto bytes = encode_sieve_cache(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("sieve cache: cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CacheError("sieve cache: write to " + path.string() + " failed");
}

SigmaTable read_sieve_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("sieve cache: cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_sieve_cache(bytes);
}

}  // namespace collatz
