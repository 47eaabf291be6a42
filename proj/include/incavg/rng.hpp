#pragma once

#include <cstdint>

#include "incavg/common.hpp"

namespace incavg {

// splitmix64; per-sample seeds are derived from a scenario seed by drawing
// one value per sample index.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal via Box-Muller (no spare kept)
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Vec unit_vector(int d) {
        if (d == 1) return Vec{uniform() < 0.5 ? -1.0 : 1.0};
        Vec v(d);
        double n = 0.0;
        do {
            for (int i = 0; i < d; ++i) v[i] = normal();
            n = norm(v);
        } while (n < 1e-12);
        for (int i = 0; i < d; ++i) v[i] /= n;
        return v;
    }

    Vec point_in_box(const Box& box) {
        Vec x(box.dim());
        for (int i = 0; i < box.dim(); ++i) x[i] = uniform(box.lo[i], box.hi[i]);
        return x;
    }
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    SplitMix64 g(base ^ (0x632be59bd9b4e019ull * (index + 1)));
    return g.next();
}

}  // namespace incavg
