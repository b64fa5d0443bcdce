#pragma once

#include <cstdint>
#include <cmath>

namespace jlg {

// SplitMix64 step; used to expand seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). Small, fast, passes BigCrush.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
        // all-zero state is the one invalid seed for this family
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on (0,1): never returns 0, so it is safe under log()
    double uniform_open() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Derives the generator seed for one chunk of a simulation. Mixing the
// chunk index through SplitMix64 decorrelates neighbouring streams, and
// makes the stream a pure function of (master seed, chunk index) so any
// execution order reproduces the same samples.
inline std::uint64_t chunk_seed(std::uint64_t master_seed, std::uint64_t chunk_index) {
    std::uint64_t sm = master_seed ^ (0x9e3779b97f4a7c15ull * (chunk_index + 1));
    return splitmix64(sm);
}

// Marsaglia-free Box-Muller: consumes exactly two uniforms per pair, which
// keeps the per-chunk consumption count deterministic.
struct NormalSampler {
    explicit NormalSampler(std::uint64_t seed) : gen(seed) {}

    double operator()() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = gen.uniform_open();
        const double u2 = gen.uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    }

    Xoshiro256pp gen;
    double spare = 0.0;
    bool have_spare = false;
};

} // namespace jlg
