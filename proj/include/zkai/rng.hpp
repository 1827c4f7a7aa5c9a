#pragma once

#include <zkai/field.hpp>
#include <zkai/hash.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace zkai {

// One root seed drives every randomized stage. Substreams are derived by
// hashing the root with a domain label, so stages stay independent and a
// run is reproducible end to end from a single integer.
class SeedTree {
public:
    explicit SeedTree(uint64_t root) : root_(root) {}

    uint64_t root() const { return root_; }

    uint64_t stream_seed(std::string_view domain) const {
        HashWriter w;
        w.u64(root_);
        w.str(domain);
        Digest d = w.finish();
        uint64_t s = 0;
        for (int i = 0; i < 8; i++) s |= uint64_t(d[i]) << (8 * i);
        return s;
    }

    std::mt19937_64 stream(std::string_view domain) const {
        return std::mt19937_64(stream_seed(domain));
    }

    std::array<uint8_t, 32> entropy(std::string_view domain) const {
        HashWriter w;
        w.u64(root_);
        w.str("entropy/");
        w.str(domain);
        return w.finish();
    }

private:
    uint64_t root_;
};

// Uniform field element by rejection from 256 raw bits masked to 254.
// Avoids std::uniform_int_distribution so streams are identical across
// standard library implementations.
Fp random_fp(std::mt19937_64& rng);
Fp random_nonzero_fp(std::mt19937_64& rng);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double random_unit(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; portable across platforms.
uint64_t random_below(std::mt19937_64& rng, uint64_t n);

}  // namespace zkai
