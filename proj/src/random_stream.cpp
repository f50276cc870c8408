#include "orient/random_stream.hpp"

namespace orient {

namespace {

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t StreamHandle::word(std::uint64_t lane) const noexcept {
    std::uint64_t h = mix(seed);
    h = mix(h ^ (stream * 0xd1b54a32d192ed03ULL));
    h = mix(h ^ (counter * 0xabc98388fb8fac03ULL));
    return mix(h ^ (lane * 0x8cb92ba72f3d8dd7ULL));
}

double StreamHandle::uniform(std::uint64_t lane) const noexcept {
    return static_cast<double>(word(lane) >> 11) * 0x1.0p-53;
}

} // namespace orient
