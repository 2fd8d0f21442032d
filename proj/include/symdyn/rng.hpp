#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace symdyn {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derive an independent seed for sub-stream `stream` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    splitmix64(s);
    return splitmix64(s);
}

// mt19937_64 with conversions spelled out so streams are identical across
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    bool coin() { return (eng_() >> 63) != 0; }
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }
    mpz_class below(const mpz_class& n) {
        if (n <= 1) return 0;
        const std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
        mpz_class v;
        do {
            v = 0;
            std::size_t got = 0;
            while (got < nbits) {
                const std::size_t take = std::min<std::size_t>(64, nbits - got);
                std::uint64_t chunk = eng_();
                if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
                mpz_class c;
                mpz_import(c.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
                v = (v << static_cast<mp_bitcnt_t>(take)) + c;
                got += take;
            }
        } while (v >= n);
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace symdyn
