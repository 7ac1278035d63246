#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mediumband {

/// splitmix64 finalizer applied to (master, index); used to derive
/// independent child seeds that do not depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Explicit random-stream handle. std::mt19937_64 output is fixed by the
/// standard, and doubles are built from the top 53 bits by hand, so streams
/// reproduce bit-for-bit on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n), n > 0.
    std::size_t index(std::size_t n);

    /// Independent stream keyed by (seed(), key).
    RandomStream child(std::uint64_t key) const { return RandomStream(mix_seed(seed_, key)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace mediumband
