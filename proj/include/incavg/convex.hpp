#pragma once

#include <memory>
#include <vector>

#include "incavg/common.hpp"

namespace incavg {

/// Fixed set of unit directions on the sphere. All ConvexSets in one
/// computation share a single grid; mixing grids is an error.
///
/// d=1 is exactly {+1, -1}; d=2 is `count` equally spaced angles starting at
/// +x; d>=3 is a deterministic low-discrepancy sphere sample of size `count`.
struct DirectionGrid {
    int dimension = 0;
    std::vector<Vec> directions;

    static std::shared_ptr<const DirectionGrid> make(int dimension, int count = 256);

    int size() const { return static_cast<int>(directions.size()); }

    // d=2: angular spacing 2*pi/N. d=1: 0 (the two directions determine an
    // interval exactly). d>=3: heuristic spacing estimate.
    double angular_gap() const;

    // index of the grid direction with largest dot product against ell
    int nearest(const Vec& ell) const;

    // index of the direction closest to -directions[i]; exact for d=1 and
    // even-count d=2 grids
    int antipode(int i) const;

    bool equals(const DirectionGrid& other) const;
};

using GridPtr = std::shared_ptr<const DirectionGrid>;

/// Convex compact set represented by one support value per grid direction.
class ConvexSet {
  public:
    ConvexSet(GridPtr grid, std::vector<double> values);

    const DirectionGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double value(int i) const { return values_[static_cast<std::size_t>(i)]; }
    int dimension() const { return grid_->dimension; }

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

bool same_grid(const ConvexSet& a, const ConvexSet& b);

// h(l) = max over points of l.p; represents the convex hull restricted to the grid
ConvexSet from_points(const std::vector<Vec>& points, GridPtr grid);

// h(l) = l.center + radius
ConvexSet ball(const Vec& center, double radius, GridPtr grid);

// support values add exactly
ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b);

// h -> lambda*h, lambda >= 0
ConvexSet scale(const ConvexSet& a, double lambda);

// max over grid directions of |h_a - h_b|; equals the Hausdorff distance up
// to discretization error bounded by (diam a + diam b) * angular gap in d=2
double hausdorff(const ConvexSet& a, const ConvexSet& b);

// max_i (l_i . v - h_i); <= 0 iff v satisfies every grid halfspace constraint
double max_violation(const ConvexSet& a, const Vec& v);

// the halfspace intersection { y : l.y <= h(l) } is non-empty (d <= 2 exact;
// d >= 3 checks antipodal slabs only)
bool is_feasible(const ConvexSet& a, double tol = 1e-9);

// d=2 only: vertices (CCW) of the intersection polygon of all grid halfspaces,
// inflated by `tol` to keep degenerate sets (points, segments) representable
std::vector<Vec> polygon_vertices(const ConvexSet& a, double tol = 1e-9);

// Nearest point of the reconstructed set to v. d=1 clamps into the interval,
// d=2 runs exact nearest-point on the reconstructed polygon. Ties between
// polygon edges resolve to the lowest edge index.
Vec project(const ConvexSet& a, const Vec& v);

// |v - project(a, v)|
double distance_to(const ConvexSet& a, const Vec& v);

// max over i of h(l_i) + h(-l_i) (width), a diameter proxy exact for d=1 and
// within the grid gap for d=2
double diameter_estimate(const ConvexSet& a);

/// Reconstruct-once, query-many projection helper. The d=2 polygon is built
/// eagerly so const instances can be shared across threads.
class PointQuery {
  public:
    explicit PointQuery(ConvexSet set);

    const ConvexSet& set() const { return set_; }
    Vec project(const Vec& v) const;
    double distance(const Vec& v) const;

  private:
    ConvexSet set_;
    std::vector<Vec> poly_;  // d=2 only
};

}  // namespace incavg
