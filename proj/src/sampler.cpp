#include "homext/sampler.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace homext {

Vec SplitMix64::vec(const PrimeField& F, std::size_t n) {
    Vec v(n);
    for (Scalar& s : v) s = scalar(F);
    return v;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("HOMEXT_SEED");
    if (!env || !*env) return kDefaultSeed;
    try {
        return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
        return kDefaultSeed;
    }
}

std::uint64_t space_size(std::uint32_t p, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / p) return std::numeric_limits<std::uint64_t>::max();
        r *= p;
    }
    return r;
}

Vec element_at(const PrimeField& F, std::size_t n, std::uint64_t idx) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<Scalar>(idx % F.p());
        idx /= F.p();
    }
    return v;
}

} // namespace homext
