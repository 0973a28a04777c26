#pragma once

#include <random>

#include "semimeasure.hpp"

namespace semipred {

// Deterministic sampler: each symbol consumes one 64-bit engine draw u and
// compares the exact dyadic u/2^64 against the exact cumulative next-symbol
// conditionals, so a run is fully determined by (mu, seed, length).
class SequenceSampler {
public:
    explicit SequenceSampler(std::uint64_t seed) : eng_(seed) {}

    // Derive an independent per-stream seed from a master seed
    // (splitmix64 of master xor stream index).
    static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t z = master ^ (stream * 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint8_t draw(const std::vector<Rat>& conditionals) {
        std::uint64_t u = eng_();
        Rat point = Rat(Int(u)) / pow2(64);
        Rat cum = 0;
        for (uint8_t a = 0; a + 1 < conditionals.size(); ++a) {
            cum += conditionals[a];
            if (point < cum) return a;
        }
        return static_cast<uint8_t>(conditionals.size() - 1);
    }

    Str sample(const Semimeasure& mu, std::size_t n) {
        Str omega(mu.alphabet());
        for (std::size_t t = 0; t < n; ++t) omega.push_back(draw(predictive(mu, omega)));
        return omega;
    }

private:
    std::mt19937_64 eng_;
};

inline Str sample_sequence(const Semimeasure& mu, std::size_t n, std::uint64_t seed) {
    return SequenceSampler(seed).sample(mu, n);
}

}  // namespace semipred
