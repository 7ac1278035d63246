#include "mediumband/random.hpp"

namespace mediumband {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::size_t RandomStream::index(std::size_t n)
{
    // Lemire's multiply-shift on the top 32 bits; bias is < n / 2^32.
    const std::uint64_t hi = engine_() >> 32;
    return static_cast<std::size_t>((hi * static_cast<std::uint64_t>(n)) >> 32);
}

} // namespace mediumband
