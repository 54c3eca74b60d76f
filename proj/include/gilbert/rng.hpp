#pragma once

#include <cmath>
#include <cstdint>

namespace gilbert {

// SplitMix64 finalizer; the basis of the counter-based generator below.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) {
    return mix64(a + 0x9e3779b97f4a7c15ULL * mix64(b));
}

// Counter-based generator: output word = f(key, stream, counter). Streams are
// independent for distinct (key, stream) pairs, so draws can be laid out in a
// fixed order regardless of evaluation order or thread scheduling.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed) : key_(mix64(seed)) {}

    uint64_t word(uint64_t stream, uint64_t counter) const {
        return mix64(key_ ^ mix64(stream), counter);
    }

    // Uniform in (0,1), 53-bit resolution, never exactly 0.
    double uniform(uint64_t stream, uint64_t counter) const {
        uint64_t w = word(stream, counter);
        return ((w >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    uint64_t key_;
};

// Sequential draws along one stream; value type, cheap to copy.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream) : rng_(seed), stream_(stream) {}
    RngStream(const CounterRng& rng, uint64_t stream) : rng_(rng), stream_(stream) {}

    double uniform() { return rng_.uniform(stream_, counter_++); }
    uint64_t word() { return rng_.word(stream_, counter_++); }
    double exponential() { return -std::log(uniform()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Derived independent stream (splitting).
    RngStream split(uint64_t substream) const {
        return RngStream(rng_, mix64(stream_, substream));
    }

    // Exact Poisson sampler via exponential spacings; O(mean) draws, no
    // underflow for large means.
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        long n = 0;
        double acc = exponential();
        while (acc <= mean) {
            ++n;
            acc += exponential();
        }
        return n;
    }

    // Index into a discrete distribution given by probabilities summing to ~1.
    template <typename Probs>
    int discrete(const Probs& probs) {
        double u = uniform();
        double acc = 0.0;
        int last = 0;
        int i = 0;
        for (double p : probs) {
            acc += p;
            if (p > 0.0) last = i;
            if (u <= acc) return i;
            ++i;
        }
        return last;  // float slack: land on the last supported entry
    }

private:
    CounterRng rng_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

}  // namespace gilbert
