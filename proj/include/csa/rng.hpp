#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace csa {

namespace detail {

// SplitMix64 finalizer. Used to turn (master_seed, stream_index) pairs into
// well-dispersed engine seeds.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// One independent random stream. Ensembles hold one stream per run, keyed by
/// (master_seed, run_index), so runs are reproducible regardless of how they
/// are scheduled across threads and extending an ensemble never perturbs
/// earlier runs.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream keyed(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t s = detail::splitmix64(master_seed ^ detail::splitmix64(stream_index));
        return RngStream(s);
    }

    std::uint64_t next_raw() { return engine_(); }

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via the Marsaglia polar method (explicit algorithm so
    /// draws are identical across standard libraries).
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * f;
        has_cache_ = true;
        return u * f;
    }

private:
    std::mt19937_64 engine_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

} // namespace csa
