#pragma once

#include <cstdint>
#include <string_view>

namespace gridcoder {

/// 64-bit FNV-1a accumulator.
class Fnv1a {
public:
    void add_byte(std::uint8_t b) {
        h_ ^= b;
        h_ *= 1099511628211ull;
    }
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void add(std::string_view s) {
        for (char c : s) add_byte(static_cast<std::uint8_t>(c));
        add_byte(0xff);
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 1469598103934665603ull;
};

/// splitmix64 finalizer; a cheap stateless mixer for seeded choices.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(a ^ mix64(b)); }

}  // namespace gridcoder
