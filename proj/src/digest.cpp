#include "pipeserve/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace pipeserve {

Checksum sha256(std::span<const uint8_t> bytes) {
    Checksum out;
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), out.bytes.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.bytes.size()) {
        throw std::runtime_error("sha256 digest failed");
    }
    return out;
}

Checksum sha256(std::string_view bytes) {
    return sha256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()));
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string Checksum::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

Checksum Checksum::from_hex(std::string_view hex) {
    if (hex.size() != 64) throw std::invalid_argument("checksum hex must be 64 chars");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("bad hex digit in checksum");
    };
    Checksum c;
    for (size_t i = 0; i < 32; ++i) {
        c.bytes[i] = static_cast<uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
    }
    return c;
}

}  // namespace pipeserve
