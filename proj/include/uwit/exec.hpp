#pragma once
#include <cstdint>

namespace uwit {

// Every parallel kernel has a serial twin producing identical results.
enum class ExecPolicy { serial, parallel };

// Counter-based splitmix64: draw(seed, i) depends only on (seed, i), so any
// partition of the index range over threads reproduces the serial stream.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t draw_u64(std::uint64_t seed, std::uint64_t ctr) {
    return mix64(seed + (ctr + 1) * 0x9E3779B97F4A7C15ull);
}

// uniform in [0,1)
inline double draw_u01(std::uint64_t seed, std::uint64_t ctr) {
    return static_cast<double>(draw_u64(seed, ctr) >> 11) * 0x1.0p-53;
}

// uniform in [-1,1)
inline double draw_sym(std::uint64_t seed, std::uint64_t ctr) {
    return 2.0 * draw_u01(seed, ctr) - 1.0;
}

} // namespace uwit
