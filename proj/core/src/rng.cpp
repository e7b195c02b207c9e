#include "moela/rng.hpp"

#include <cmath>
#include <numbers>

namespace moela {

namespace {
    constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

    constexpr std::uint64_t mix64(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
} // namespace

std::uint64_t stream_key(std::string_view label, std::initializer_list<std::uint64_t> parts)
{
    // FNV-1a over the label, then fold each part through the mixer.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    for (auto p : parts) {
        h = mix64(h ^ mix64(p + golden_gamma));
    }
    return mix64(h);
}

std::uint64_t CounterRng::next() noexcept
{
    ++counter_;
    return mix64(key_ + counter_ * golden_gamma);
}

double CounterRng::uniform() noexcept
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t n) noexcept
{
    // Reject the low residue class so that x % n is unbiased.
    auto const threshold = (0 - n) % n;
    auto x = next();
    while (x < threshold) {
        x = next();
    }
    return x % n;
}

double CounterRng::normal() noexcept
{
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace moela
