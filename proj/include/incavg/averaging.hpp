#pragma once

#include <functional>
#include <optional>
#include <string>

#include "incavg/setmap.hpp"

namespace incavg {

/// Autonomous average of a periodic map. Sum-of-periodic maps average each
/// term over its own period; componentwise-periodic maps are averaged by
/// nesting partial averages over every distinct declared period. Averaging an
/// autonomous map returns it unchanged.
SetMap average_periodic(const SetMap& map, int quad_nodes = 256);

/// Chattering (space) average of a control system at state y: support value
/// per direction of the set of torus-averaged selections,
///   h(l) = integral over the phase torus of max_u l . sum_j g_j(phi_j T_j, y, u).
/// One torus axis per distinct period (at most 3), tensor midpoint quadrature
/// with torus_nodes per axis. Incommensurability of the periods is declared by
/// the caller, not verified.
ConvexSet chattering_average(const ControlSystem& sys, const Vec& y, GridPtr grid,
                             int torus_nodes = 128);

/// Radius (h(+1)+h(-1))/2 of the chattering average of a scalar system at y.
double chattering_radius(const ControlSystem& sys, double y, int torus_nodes = 128);

/// Autonomous set map backed by a table of chattering averages over a state
/// grid (linear interpolation in the state, support values resolved on
/// `grid`). x-independent systems collapse to a single table entry.
SetMap averaged_control_map(std::shared_ptr<const ControlSystem> sys, GridPtr grid,
                            int torus_nodes = 128, int state_nodes = 33);

struct GaugeCandidate {
    std::string name;
    std::function<double(double)> delta;  // eps -> Delta(eps)
};

/// Measured window-average deviation eta(eps) for each candidate window
/// schedule Delta(eps).
struct Gauge {
    struct Row {
        double eps = 0.0, delta = 0.0, eta = 0.0;
    };
    struct Table {
        std::string name;
        std::vector<Row> rows;
    };
    std::vector<Table> tables;
};

Gauge estimate_gauge(const SetMap& map, const SetMap& averaged,
                     const std::vector<GaugeCandidate>& candidates,
                     const std::vector<double>& eps_list, const std::vector<Vec>& x_samples,
                     const std::vector<double>& s0_samples, GridPtr grid, int quad_nodes = 256);

// Delta(eps) = eps * (sum of periods) and Delta(eps) = sqrt(eps)
std::vector<GaugeCandidate> default_gauge_candidates(const SetMap& map);

/// delta(eps) = sup over x and T in [0, 1/eps] of
///   eps * d_H(integral_0^T F(s,x) ds, T Fbar(x)),
/// with the sup over T taken on a geometric grid.
struct DeltaModulus {
    std::vector<double> eps;
    std::vector<double> delta;
    std::vector<double> refinement;  // |estimate at full grid - at half grid| per eps
};

DeltaModulus estimate_delta_modulus(const SetMap& map, const SetMap& averaged,
                                    const std::vector<double>& eps_list,
                                    const std::vector<Vec>& x_samples, GridPtr grid,
                                    int t_grid = 512);

// Warns when a period ratio is within 1e-9 of p/q with p, q <= 64.
std::optional<std::string> commensurability_warning(const std::vector<double>& periods);

}  // namespace incavg
