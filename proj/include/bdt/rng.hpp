#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace bdt {

// All randomness flows through this wrapper. std::mt19937_64 has a fixed
// output sequence per seed; the distributions are hand-rolled because the
// standard library's are implementation-defined, which would break
// reproducibility of saved models across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform on (0,1), endpoints excluded so logs stay finite
    double uniform01() {
        return (double(gen_() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // uniform integer in [0, n)
    int uniform_int(int n) {
        return int((unsigned __int128)gen_() * (std::uint64_t)n >> 64);
    }

    // standard normal, Box-Muller
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // stream-splitting for independent sub-runs (cross-validation folds)
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace bdt
