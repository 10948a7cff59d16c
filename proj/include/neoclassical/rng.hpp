#pragma once

#include <cstdint>
#include <vector>

#include "neoclassical/gaussian.hpp"

namespace neo {

// Counter-based uniform stream: each draw is a keyed 64-bit hash of a running
// counter, so (seed, stream_id) fully determines the sequence and replication
// r of a study can use stream_id = r regardless of thread layout.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(derive_key(seed, stream_id)) {}

    // Uniform draw in the open interval (0,1).
    double next_uniform() {
        const std::uint64_t z = scramble(key_, counter_++);
        return static_cast<double>(z >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    std::vector<double> uniforms(std::size_t n) {
        std::vector<double> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(next_uniform());
        return out;
    }

    // Standard normal draw by inverse transform.
    double next_gaussian() { return gaussian_quantile(next_uniform()); }

  private:
    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
        return splitmix(splitmix(seed) ^ (0x9E3779B97F4A7C15ull * (stream_id + 1)));
    }

    // Keyed bijection of the counter (murmur-style finalizer rounds).
    static std::uint64_t scramble(std::uint64_t key, std::uint64_t ctr) {
        std::uint64_t z = ctr ^ key;
        z *= 0xFF51AFD7ED558CCDull;
        z ^= z >> 33;
        z += key;
        z *= 0xC4CEB9FE1A85EC53ull;
        z ^= z >> 33;
        z ^= key * 0xD6E8FEB86659FD93ull;
        z *= 0x2545F4914F6CDD1Dull;
        z ^= z >> 32;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace neo
