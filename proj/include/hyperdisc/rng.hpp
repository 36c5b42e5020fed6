// Deterministic seeding utilities shared by generation, pruning and sweeps.
#ifndef HYPERDISC_RNG_HPP
#define HYPERDISC_RNG_HPP

#include <cstdint>

namespace hyperdisc {

// splitmix64 finalizer (Steele/Lea/Flood constants). All derived seeds in
// this project are produced by this mixer so that results are reproducible
// from the documented constants alone.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream derivation: mix64(seed, i) is the seed of sub-stream i. Used for
// (master_seed, row_index) in sweeps and (seed, edge_id) in edge pruning,
// so outcomes do not depend on scheduling order.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL));
}

// Uniform double in [0,1) from a 64-bit word (53-bit mantissa path).
inline double uniform01(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace hyperdisc

#endif
