#include "abstab/rng.hpp"

#include <stdexcept>

namespace abstab {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng CounterRng::for_shot(std::uint64_t seed, std::uint64_t shot) {
    return CounterRng(mix(seed + 0x9e3779b97f4a7c15ull * (shot + 1)));
}

std::uint64_t CounterRng::next_u64() {
    return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
}

Int CounterRng::below(const Int& n) {
    if (n <= 0) throw std::invalid_argument("CounterRng::below: n must be positive");
    if (n == 1) return 0;
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    const std::size_t words = (bits + 63) / 64;
    while (true) {
        Int r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            r <<= 64;
            std::uint64_t word = next_u64();
            if (w == 0 && bits % 64 != 0) word >>= 64 - bits % 64;
            r += Int(static_cast<unsigned long>(word));
        }
        if (r < n) return r;
    }
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace abstab
