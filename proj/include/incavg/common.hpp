#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace incavg {

using Vec = std::vector<double>;

// Numeric failures at runtime (non-finite values, infeasible sets, domain exits).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration (scenario files, unknown names, malformed inputs).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An empirical estimate exceeded its theoretical bound.
struct SoundnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

inline Vec normalized(Vec a) {
    const double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    for (double& v : a) v /= n;
    return a;
}

// x + c*d, used as the single Euler-step expression so tests can recompute it bitwise.
inline Vec euler_step(const Vec& x, double c, const Vec& d) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + c * d[i];
    return out;
}

// Axis-aligned box, used for state domains and control ranges.
struct Box {
    Vec lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }

    static Box cube(int d, double halfwidth) {
        Box b;
        b.lo.assign(d, -halfwidth);
        b.hi.assign(d, halfwidth);
        return b;
    }

    bool contains(const Vec& x, double tol = 0.0) const {
        if (x.size() != lo.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
        return true;
    }

    Vec center() const {
        Vec c(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
        return c;
    }

    Box intersect(const Box& other) const {
        if (other.dim() != dim()) throw std::invalid_argument("box dimension mismatch");
        Box b = *this;
        for (int i = 0; i < dim(); ++i) {
            b.lo[i] = std::max(b.lo[i], other.lo[i]);
            b.hi[i] = std::min(b.hi[i], other.hi[i]);
        }
        return b;
    }
};

}  // namespace incavg
