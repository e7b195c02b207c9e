#ifndef MOELA_RNG_HPP
#define MOELA_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string_view>
#include <utility>

namespace moela {

// Hashes a label plus integer parts into a 64-bit stream key. Used to key
// generators by (problem id, sample size, seed) and similar tuples so that
// results never depend on execution order.
std::uint64_t stream_key(std::string_view label, std::initializer_list<std::uint64_t> parts = {});

// Counter-based generator: the i-th output is a pure function of (key, i).
// All distributions are implemented here rather than with <random>
// distributions, whose output is implementation defined.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) noexcept : key_(key) { }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    // Uniform in [0, 1).
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept;
    double normal() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

template<typename T>
void shuffle(std::span<T> values, CounterRng& rng)
{
    for (std::size_t i = values.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace moela

#endif
