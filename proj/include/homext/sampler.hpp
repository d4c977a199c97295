#pragma once

// SplitMix64 and the sampling conventions of the verifiers.
//
// Sample number i of a verifier draws from the block of the single
// SplitMix64 sequence starting at output i * kDrawsPerSample. The state is
// an arithmetic progression, so any block is reachable in O(1) and shards
// of a parallel loop read disjoint, deterministic subsequences.

#include <cstdint>

#include "homext/gfp.hpp"

namespace homext {

constexpr std::uint64_t kDefaultSeed = 0xD0B1E;
constexpr std::size_t kDefaultSamples = 1000;
constexpr std::uint64_t kExhaustiveLimit = 65536;
constexpr std::uint64_t kDrawsPerSample = 64;

class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    // Positioned so the next output is number `index` of the stream.
    static SplitMix64 at(std::uint64_t seed, std::uint64_t index) { return SplitMix64(seed + index * kGamma); }
    static SplitMix64 for_sample(std::uint64_t seed, std::uint64_t sample) {
        return at(seed, sample * kDrawsPerSample);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += kGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    Scalar scalar(const PrimeField& F) { return static_cast<Scalar>(next() % F.p()); }
    Scalar nonzero_scalar(const PrimeField& F) { return 1 + static_cast<Scalar>(next() % (F.p() - 1)); }
    Vec vec(const PrimeField& F, std::size_t n);

private:
    std::uint64_t state_;
};

// Seed from HOMEXT_SEED when set (decimal or 0x-hex), else kDefaultSeed.
std::uint64_t default_seed();

// p^n, saturating at UINT64_MAX.
std::uint64_t space_size(std::uint32_t p, std::size_t n);
// The idx-th vector of GF(p)^n in base-p digit order (coordinate 0 fastest).
Vec element_at(const PrimeField& F, std::size_t n, std::uint64_t idx);

} // namespace homext
