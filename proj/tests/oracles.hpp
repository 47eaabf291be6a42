// Independent geometric oracles used by the tests. These deliberately avoid
// the support-grid representation: hulls and distances are computed on
// explicit vertex lists so they can cross-check the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "incavg/common.hpp"

namespace oracle {

using incavg::Vec;

inline double cross(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain, CCW hull without collinear points
inline std::vector<Vec> convex_hull(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Vec> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline Vec segment_nearest(const Vec& a, const Vec& b, const Vec& v) {
    const double bx = b[0] - a[0], by = b[1] - a[1];
    const double len2 = bx * bx + by * by;
    if (len2 == 0.0) return a;
    double t = ((v[0] - a[0]) * bx + (v[1] - a[1]) * by) / len2;
    t = std::min(1.0, std::max(0.0, t));
    return Vec{a[0] + t * bx, a[1] + t * by};
}

inline bool point_in_convex(const std::vector<Vec>& hull, const Vec& v) {
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], v) < 0) return false;
    return true;
}

inline double dist_to_polygon(const std::vector<Vec>& hull, const Vec& v) {
    if (hull.empty()) return std::numeric_limits<double>::infinity();
    if (hull.size() == 1) return incavg::distance(hull[0], v);
    if (point_in_convex(hull, v)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i)
        best = std::min(best,
                        incavg::distance(segment_nearest(hull[i], hull[(i + 1) % hull.size()], v), v));
    return best;
}

inline Vec nearest_on_polygon(const std::vector<Vec>& hull, const Vec& v) {
    if (hull.size() == 1) return hull[0];
    if (point_in_convex(hull, v)) return v;
    Vec best = hull[0];
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        Vec c = segment_nearest(hull[i], hull[(i + 1) % hull.size()], v);
        const double d = incavg::distance(c, v);
        if (d < bd) {
            bd = d;
            best = c;
        }
    }
    return best;
}

// Exact Hausdorff distance between convex polygons: the sup of d(., other)
// over a convex set is attained at a vertex.
inline double hausdorff_polygons(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    double m = 0.0;
    for (const Vec& v : a) m = std::max(m, dist_to_polygon(b, v));
    for (const Vec& v : b) m = std::max(m, dist_to_polygon(a, v));
    return m;
}

inline double diameter(const std::vector<Vec>& pts) {
    double m = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            m = std::max(m, incavg::distance(pts[i], pts[j]));
    return m;
}

}  // namespace oracle
