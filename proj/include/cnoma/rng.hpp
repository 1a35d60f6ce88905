#pragma once

#include <cstdint>
#include <utility>

namespace cnoma {

// Counter-based random streams built on the SplitMix64 mixer. Each trial
// gets its own stream keyed by (seed, trial index), so a Monte Carlo run
// produces the same draws no matter how trials are distributed over
// workers.

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RandomStream {
public:
    /// Independent substream for one (seed, counter) pair.
    static RandomStream for_trial(std::uint64_t seed, std::uint64_t trial) {
        RandomStream s;
        s.state_ = splitmix64_mix(splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL) + trial);
        return s;
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform double strictly inside (0, 1).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// One Box-Muller pair of independent standard normals.
    std::pair<double, double> next_normal_pair();

private:
    std::uint64_t state_ = 0;
};

/// Neumaier compensated accumulator; keeps long reductions accurate and
/// insensitive to how partial sums were grouped.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v);
    double value() const { return sum + comp; }
};

} // namespace cnoma
