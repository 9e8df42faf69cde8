#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace upc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a, used to turn experiment names into stream tags.
constexpr std::uint64_t tag_of(std::string_view name) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char ch : name) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Identifies a family of independent streams: one per chunk index.
/// Derived keys let callers partition work (per reuse, per bin, ...) without
/// any shared generator.
struct SeedKey {
    std::uint64_t master = 0;
    std::uint64_t tag = 0;

    SeedKey derive(std::uint64_t sub) const noexcept
    {
        return {master, mix64(tag ^ mix64(sub + 0x632be59bd9b4e019ULL))};
    }
    SeedKey derive(std::string_view name) const noexcept { return derive(tag_of(name)); }

    std::uint64_t stream_seed(std::uint64_t index) const noexcept
    {
        return mix64(mix64(master) ^ mix64(tag + mix64(index)));
    }
};

/// Uniform and exponential variates from a 64-bit Mersenne Twister. The
/// transforms are written out here (not std::*_distribution) so sequences are
/// identical across standard library implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    RandomStream(const SeedKey& key, std::uint64_t index) : engine_(key.stream_seed(index)) {}

    /// Uniform on the open interval (0,1).
    double uniform() noexcept
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exponential with unit mean.
    double exponential() noexcept { return -std::log(uniform()); }

    /// Uniform angle in (0, 2*pi).
    double angle() noexcept { return 2.0 * std::numbers::pi * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace upc
