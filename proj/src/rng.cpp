#include "skyrelay/rng.hpp"

#include <stdexcept>

namespace skyrelay {

double Rng::uniform01()
{
    // 53 high bits -> double in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform01();
}

int Rng::randint(int lo, int hi)
{
    if (hi < lo) {
        throw std::invalid_argument("randint: empty range");
    }
    const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t draw = engine_();
    while (draw >= limit) {
        draw = engine_();
    }
    return static_cast<int>(lo + static_cast<std::int64_t>(draw % span));
}

} // namespace skyrelay
