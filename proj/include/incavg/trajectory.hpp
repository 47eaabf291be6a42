#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "incavg/setmap.hpp"

namespace incavg {

/// Euler trajectory of x' in eps F(t,x) on the uniform grid over [0, 1/eps]:
/// states[k+1] = states[k] + dt * derivs[k], derivs[k] in eps F(t_k, states[k]).
struct Trajectory {
    int dimension = 0;
    double eps = 0.0;
    std::vector<double> times;   // n_steps + 1 points
    std::vector<Vec> states;     // per node
    std::vector<Vec> derivs;     // per interval

    int steps() const { return static_cast<int>(derivs.size()); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    double horizon() const { return times.empty() ? 0.0 : times.back() - times.front(); }
};

/// Measurable selection recipe: piecewise-constant extremal directions or a
/// fixed control vector.
struct SelectionStrategy {
    enum class Kind { extremal_direction, fixed_control, random_switching };

    Kind kind = Kind::extremal_direction;
    std::vector<double> switch_times;  // ascending, starts at 0
    std::vector<Vec> pieces;           // unit directions or control vectors
    std::uint64_t seed = 0;

    static SelectionStrategy extremal(Vec direction);
    static SelectionStrategy piecewise_extremal(std::vector<double> switch_times,
                                                std::vector<Vec> directions);
    static SelectionStrategy fixed_control(Vec u);
    // piecewise-constant random unit directions, dwell ~ mean_dwell
    static SelectionStrategy random_switching(std::uint64_t seed, int dimension, double horizon,
                                              double mean_dwell);

    const Vec& piece_at(double t) const;
};

// the point of eps F(t,x) maximizing l . y (d=1 exact; d=2 via a central
// difference of the support function in the direction angle)
Vec support_point(const SetMap& map, double t, const Vec& x, const Vec& ell);

Trajectory integrate_selection(const SetMap& map, double eps, const Vec& x0,
                               const SelectionStrategy& strategy, int n_steps);

/// Pre-evaluated eps*F(t_k, .) projection queries along a shared time grid.
/// Valid only for x-independent maps (K = 0); shared read-only across threads.
struct StepSetCache {
    std::vector<std::shared_ptr<const PointQuery>> sets;
};

std::shared_ptr<const StepSetCache> precompute_step_sets(const SetMap& map, double eps,
                                                         const std::vector<double>& times,
                                                         GridPtr grid);

struct TrackResult {
    Trajectory tracked;
    double certified_bound = 0.0;   // e^{eps K T} * sum dt * d(y'(t_k), eps F(t_k, y_k))
    double realized_sup = 0.0;      // max_k |tracked_k - reference_k|
    double defect_integral = 0.0;
};

// Constructive tracking: step the nearest feasible derivative to the
// reference derivative and report the certified distance bound.
TrackResult filippov_track(const SetMap& map, double eps, const Trajectory& reference,
                           GridPtr grid, const StepSetCache* cache = nullptr);

struct DistanceEstimate {
    double forward = 0.0;   // max over sampled F-trajectories of tracking into G
    double backward = 0.0;  // symmetric
    double value() const { return forward > backward ? forward : backward; }
};

// Sampled two-sided estimate of the Hausdorff distance between the solution
// sets in the sup norm on [0, 1/eps]. Deterministic for a fixed seed; samples
// run in parallel and merge by max.
DistanceEstimate solution_set_distance(const SetMap& F, const SetMap& G, double eps,
                                       const Vec& x0, int n_samples, int n_steps,
                                       std::uint64_t seed, GridPtr grid);

// strategy pool used by the estimator: extremal axis directions, the extreme
// controls of the originating system (when any), then seeded random switching
std::vector<SelectionStrategy> sample_strategies(const SetMap& map, double eps, int n_samples,
                                                 std::uint64_t seed);

// d=1 reach interval at t = 1/eps via classical 4th-order stepping of the two
// extremal branches x' = eps h(t,x,+1) and x' = -eps h(t,x,-1)
std::pair<double, double> endpoint_reach_interval(const SetMap& map, double eps, double x0,
                                                  int n_steps);

// CSV with header t,x_1,..,x_d; fixed %.17g formatting, deterministic
void write_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace incavg
