#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace tracelab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 with hand-rolled draws. The engine's output sequence is fixed by
// the standard; std::uniform_*_distribution is not, so we do not use it
// anywhere results must be reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Unbiased integer in [0, bound) via Lemire's multiply-shift rejection.
    std::uint64_t uniform_u64(std::uint64_t bound) {
        if (bound == 0) return 0;
        while (true) {
            std::uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (-bound) % bound) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

    // Inclusive range.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform_u64(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

private:
    std::mt19937_64 engine_;
};

// Draws indices 0..n-1 with weight (i+1)^-s, via the cumulative table.
class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double exponent) : cumulative_(n) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += std::pow(static_cast<double>(i + 1), -exponent);
            cumulative_[i] = acc;
        }
        for (auto& c : cumulative_) c /= acc;
    }

    std::size_t draw(Rng& rng) const {
        double u = rng.uniform_real();
        std::size_t lo = 0, hi = cumulative_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cumulative_[mid] <= u) lo = mid + 1; else hi = mid;
        }
        return lo;
    }

    double weight(std::size_t i) const {
        return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
    }

private:
    std::vector<double> cumulative_;
};

}  // namespace tracelab
