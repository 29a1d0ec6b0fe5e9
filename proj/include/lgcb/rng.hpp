#pragma once

#include <cstdint>

namespace lgcb {

// Purpose tag for a random stream. Streams keyed by (seed, round, tag) are
// mutually disjoint, so two algorithms run under the same seed face the
// identical environment draws while consuming their own action randomness.
enum class StreamTag : std::uint64_t {
    kContext = 1,
    kOracleContext = 2,
    kAction = 3,
    kGraph = 4,
};

// Counter-seeded splitmix64 stream: the tuple (seed, round, tag) fully
// determines the sequence, with no state carried between rounds.
class Prng {
public:
    Prng(std::uint64_t seed, std::uint64_t round, StreamTag tag)
        : state_(derive(seed, round, static_cast<std::uint64_t>(tag))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return finalize(state_);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t round, std::uint64_t tag) {
        std::uint64_t h = finalize(seed + 0x9E3779B97F4A7C15ULL);
        h = finalize(h ^ (round * 0xBF58476D1CE4E5B9ULL));
        h = finalize(h ^ (tag * 0x94D049BB133111EBULL));
        return h;
    }

    std::uint64_t state_;
};

} // namespace lgcb
