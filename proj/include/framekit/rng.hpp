#ifndef FRAMEKIT_RNG_HPP
#define FRAMEKIT_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace framekit {

/**
 * std::mt19937_64 with hand-rolled output mappings. The engine's output
 * sequence is fixed by the standard; std::uniform_real_distribution is not, so
 * doubles are formed from the top 53 bits directly. Identical seeds therefore
 * give identical streams on every conforming platform.
 */
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, n); n must be positive.
    std::size_t below(std::size_t n)
    {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r = engine_();
        while (r >= limit) {
            r = engine_();
        }
        return static_cast<std::size_t>(r % bound);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace framekit

#endif // FRAMEKIT_RNG_HPP
