#include "incavg/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace incavg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// Acklam's rational approximation of the standard normal quantile, good to
// ~1e-9; used only to build deterministic sphere samples for d >= 3.
double inverse_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p <= phigh) {
        q = p - 0.5;
        r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

// generalized-golden-ratio Kronecker sequence in [0,1)^d
std::vector<Vec> kronecker_sequence(int d, int count) {
    double phi = 1.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
    Vec alpha(d);
    for (int j = 0; j < d; ++j) alpha[j] = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);
    std::vector<Vec> pts(count, Vec(d));
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < d; ++j) pts[i][j] = std::fmod(0.5 + (i + 1) * alpha[j], 1.0);
    return pts;
}

}  // namespace

std::shared_ptr<const DirectionGrid> DirectionGrid::make(int dimension, int count) {
    if (dimension < 1) throw std::invalid_argument("dimension must be positive");
    auto grid = std::make_shared<DirectionGrid>();
    grid->dimension = dimension;
    if (dimension == 1) {
        grid->directions = {Vec{1.0}, Vec{-1.0}};
        return grid;
    }
    if (count < 2) throw std::invalid_argument("direction count must be at least 2");
    if (dimension == 2) {
        grid->directions.reserve(count);
        for (int i = 0; i < count; ++i) {
            const double theta = kTwoPi * i / count;
            grid->directions.push_back(Vec{std::cos(theta), std::sin(theta)});
        }
        return grid;
    }
    const auto u = kronecker_sequence(dimension, count);
    grid->directions.reserve(count);
    for (const Vec& row : u) {
        Vec v(dimension);
        for (int j = 0; j < dimension; ++j) {
            double p = row[j];
            p = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
            v[j] = inverse_normal_cdf(p);
        }
        grid->directions.push_back(normalized(std::move(v)));
    }
    return grid;
}

double DirectionGrid::angular_gap() const {
    if (dimension == 1) return 0.0;
    if (dimension == 2) return kTwoPi / size();
    return kTwoPi / std::pow(static_cast<double>(size()), 1.0 / (dimension - 1));
}

int DirectionGrid::nearest(const Vec& ell) const {
    int best = 0;
    double best_dot = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
        const double d = dot(directions[static_cast<std::size_t>(i)], ell);
        if (d > best_dot) {
            best_dot = d;
            best = i;
        }
    }
    return best;
}

int DirectionGrid::antipode(int i) const {
    if (dimension == 1) return 1 - i;
    if (dimension == 2 && size() % 2 == 0) return (i + size() / 2) % size();
    Vec neg = directions[static_cast<std::size_t>(i)];
    for (double& v : neg) v = -v;
    return nearest(neg);
}

bool DirectionGrid::equals(const DirectionGrid& other) const {
    return dimension == other.dimension && directions == other.directions;
}

ConvexSet::ConvexSet(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("null direction grid");
    if (values_.size() != static_cast<std::size_t>(grid_->size()))
        throw std::invalid_argument("support value count does not match grid size");
    if (!all_finite(values_)) throw NumericError("non-finite support value");
}

bool same_grid(const ConvexSet& a, const ConvexSet& b) {
    return a.grid_ptr() == b.grid_ptr() || a.grid().equals(b.grid());
}

ConvexSet from_points(const std::vector<Vec>& points, GridPtr grid) {
    if (!grid) throw std::invalid_argument("null direction grid");
    if (points.empty()) throw std::invalid_argument("empty point list");
    for (const Vec& p : points)
        if (static_cast<int>(p.size()) != grid->dimension)
            throw std::invalid_argument("point dimension mismatch");
    std::vector<double> h(grid->size());
    for (int i = 0; i < grid->size(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& p : points) best = std::max(best, dot(grid->directions[i], p));
        h[static_cast<std::size_t>(i)] = best;
    }
    return ConvexSet(std::move(grid), std::move(h));
}

ConvexSet ball(const Vec& center, double radius, GridPtr grid) {
    if (!grid) throw std::invalid_argument("null direction grid");
    if (radius < 0) throw std::invalid_argument("negative radius");
    if (static_cast<int>(center.size()) != grid->dimension)
        throw std::invalid_argument("center dimension mismatch");
    std::vector<double> h(grid->size());
    for (int i = 0; i < grid->size(); ++i)
        h[static_cast<std::size_t>(i)] = dot(grid->directions[i], center) + radius;
    return ConvexSet(std::move(grid), std::move(h));
}

ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b) {
    if (!same_grid(a, b)) throw std::invalid_argument("direction grid mismatch");
    std::vector<double> h(a.values());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += b.values()[i];
    return ConvexSet(a.grid_ptr(), std::move(h));
}

ConvexSet scale(const ConvexSet& a, double lambda) {
    if (lambda < 0) throw std::invalid_argument("negative scale factor");
    std::vector<double> h(a.values());
    for (double& v : h) v *= lambda;
    return ConvexSet(a.grid_ptr(), std::move(h));
}

double hausdorff(const ConvexSet& a, const ConvexSet& b) {
    if (!same_grid(a, b)) throw std::invalid_argument("direction grid mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::fabs(a.values()[i] - b.values()[i]));
    return m;
}

double max_violation(const ConvexSet& a, const Vec& v) {
    if (static_cast<int>(v.size()) != a.dimension())
        throw std::invalid_argument("point dimension mismatch");
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.grid().size(); ++i)
        m = std::max(m, dot(a.grid().directions[i], v) - a.value(i));
    return m;
}

bool is_feasible(const ConvexSet& a, double tol) {
    const int d = a.dimension();
    if (d == 1) return a.value(0) + a.value(1) >= -tol;
    if (d == 2) return !polygon_vertices(a, tol).empty();
    // necessary condition only: every near-antipodal slab must be non-empty
    for (int i = 0; i < a.grid().size(); ++i) {
        const int j = a.grid().antipode(i);
        if (a.value(i) + a.value(j) < -tol) return false;
    }
    return true;
}

namespace {

// Sutherland-Hodgman clip of a convex polygon against n.y <= c
std::vector<Vec> clip_halfplane(const std::vector<Vec>& poly, const Vec& n, double c) {
    std::vector<Vec> out;
    const std::size_t m = poly.size();
    out.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % m];
        const double dp = n[0] * p[0] + n[1] * p[1] - c;
        const double dq = n[0] * q[0] + n[1] * q[1] - c;
        if (dp <= 0) out.push_back(p);
        if ((dp <= 0) != (dq <= 0)) {
            const double t = dp / (dp - dq);
            out.push_back(Vec{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

}  // namespace

std::vector<Vec> polygon_vertices(const ConvexSet& a, double tol) {
    if (a.dimension() != 2) throw std::invalid_argument("polygon reconstruction requires d=2");
    double extent = 1.0;
    for (double v : a.values()) extent = std::max(extent, std::fabs(v));
    extent = 2.0 * extent + 1.0;
    std::vector<Vec> poly = {Vec{-extent, -extent}, Vec{extent, -extent}, Vec{extent, extent},
                             Vec{-extent, extent}};
    for (int i = 0; i < a.grid().size() && !poly.empty(); ++i)
        poly = clip_halfplane(poly, a.grid().directions[i], a.value(i) + tol);
    // drop near-duplicate consecutive vertices left behind by clipping
    if (!poly.empty()) {
        const double eps = 1e-12 * extent;
        std::vector<Vec> dedup;
        dedup.reserve(poly.size());
        for (const Vec& p : poly) {
            if (dedup.empty() || distance(dedup.back(), p) > eps) dedup.push_back(p);
        }
        while (dedup.size() > 1 && distance(dedup.front(), dedup.back()) <= eps)
            dedup.pop_back();
        poly.swap(dedup);
    }
    return poly;
}

namespace {

Vec segment_nearest(const Vec& a, const Vec& b, const Vec& v) {
    const double bx = b[0] - a[0], by = b[1] - a[1];
    const double len2 = bx * bx + by * by;
    if (len2 == 0.0) return a;
    double t = ((v[0] - a[0]) * bx + (v[1] - a[1]) * by) / len2;
    t = std::min(1.0, std::max(0.0, t));
    return Vec{a[0] + t * bx, a[1] + t * by};
}

}  // namespace

Vec project(const ConvexSet& a, const Vec& v) {
    const int d = a.dimension();
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("point dimension mismatch");
    if (d == 1) {
        const double hi = a.value(0);
        const double lo = -a.value(1);
        if (lo > hi + 1e-9) throw NumericError("infeasible set in projection");
        if (lo > hi) return Vec{0.5 * (lo + hi)};
        return Vec{std::min(hi, std::max(lo, v[0]))};
    }
    if (d != 2) throw std::invalid_argument("projection supports d in {1,2} only");
    if (max_violation(a, v) <= 0.0) return v;
    const std::vector<Vec> poly = polygon_vertices(a);
    if (poly.empty()) throw NumericError("infeasible set in projection");
    if (poly.size() == 1) return poly[0];
    Vec best = poly[0];
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec cand = segment_nearest(poly[i], poly[(i + 1) % poly.size()], v);
        const double dist = distance(cand, v);
        if (dist < best_dist) {  // strict: lowest edge index wins ties
            best_dist = dist;
            best = cand;
        }
    }
    return best;
}

double distance_to(const ConvexSet& a, const Vec& v) { return distance(v, project(a, v)); }

double diameter_estimate(const ConvexSet& a) {
    double m = 0.0;
    for (int i = 0; i < a.grid().size(); ++i)
        m = std::max(m, a.value(i) + a.value(a.grid().antipode(i)));
    return std::max(m, 0.0);
}

PointQuery::PointQuery(ConvexSet set) : set_(std::move(set)) {
    const int d = set_.dimension();
    if (d == 1) {
        if (-set_.value(1) > set_.value(0) + 1e-9) throw NumericError("infeasible interval");
        return;
    }
    if (d != 2) throw std::invalid_argument("point queries support d in {1,2} only");
    poly_ = polygon_vertices(set_);
    if (poly_.empty()) throw NumericError("infeasible set in projection");
}

Vec PointQuery::project(const Vec& v) const {
    if (static_cast<int>(v.size()) != set_.dimension())
        throw std::invalid_argument("point dimension mismatch");
    if (set_.dimension() == 1) {
        const double hi = set_.value(0);
        const double lo = -set_.value(1);
        if (lo > hi) return Vec{0.5 * (lo + hi)};
        return Vec{std::min(hi, std::max(lo, v[0]))};
    }
    if (max_violation(set_, v) <= 0.0) return v;
    if (poly_.size() == 1) return poly_[0];
    Vec best = poly_[0];
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly_.size(); ++i) {
        const Vec cand = segment_nearest(poly_[i], poly_[(i + 1) % poly_.size()], v);
        const double dist = distance(cand, v);
        if (dist < best_dist) {
            best_dist = dist;
            best = cand;
        }
    }
    return best;
}

double PointQuery::distance(const Vec& v) const { return incavg::distance(v, project(v)); }

}  // namespace incavg
