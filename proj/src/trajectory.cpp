#include "incavg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "incavg/parallel.hpp"
#include "incavg/rng.hpp"

namespace incavg {

SelectionStrategy SelectionStrategy::extremal(Vec direction) {
    SelectionStrategy s;
    s.kind = Kind::extremal_direction;
    s.switch_times = {0.0};
    s.pieces = {normalized(std::move(direction))};
    return s;
}

SelectionStrategy SelectionStrategy::piecewise_extremal(std::vector<double> switch_times,
                                                        std::vector<Vec> directions) {
    if (switch_times.empty() || switch_times.front() != 0.0)
        throw std::invalid_argument("switch times must start at 0");
    if (switch_times.size() != directions.size())
        throw std::invalid_argument("one direction per switch time required");
    if (!std::is_sorted(switch_times.begin(), switch_times.end()))
        throw std::invalid_argument("switch times must be ascending");
    SelectionStrategy s;
    s.kind = Kind::extremal_direction;
    s.switch_times = std::move(switch_times);
    for (Vec& d : directions) d = normalized(std::move(d));
    s.pieces = std::move(directions);
    return s;
}

SelectionStrategy SelectionStrategy::fixed_control(Vec u) {
    SelectionStrategy s;
    s.kind = Kind::fixed_control;
    s.switch_times = {0.0};
    s.pieces = {std::move(u)};
    return s;
}

SelectionStrategy SelectionStrategy::random_switching(std::uint64_t seed, int dimension,
                                                      double horizon, double mean_dwell) {
    if (!(horizon > 0) || !(mean_dwell > 0))
        throw std::invalid_argument("horizon and dwell must be positive");
    SelectionStrategy s;
    s.kind = Kind::random_switching;
    s.seed = seed;
    SplitMix64 rng(seed);
    double t = 0.0;
    while (t < horizon) {
        s.switch_times.push_back(t);
        s.pieces.push_back(rng.unit_vector(dimension));
        t += mean_dwell * (0.5 + rng.uniform());
    }
    return s;
}

const Vec& SelectionStrategy::piece_at(double t) const {
    const auto it = std::upper_bound(switch_times.begin(), switch_times.end(), t);
    const std::size_t idx =
        it == switch_times.begin() ? 0 : static_cast<std::size_t>(it - switch_times.begin() - 1);
    return pieces[std::min(idx, pieces.size() - 1)];
}

Vec support_point(const SetMap& map, double t, const Vec& x, const Vec& ell) {
    const int d = map.dimension();
    if (d == 1) {
        if (ell[0] >= 0) return Vec{map.support(t, x, Vec{1.0})};
        return Vec{-map.support(t, x, Vec{-1.0})};
    }
    if (d != 2) throw std::invalid_argument("extremal selections support d in {1,2} only");
    const Vec u = normalized(ell);
    const double theta = std::atan2(u[1], u[0]);
    const double delta = 1e-5;
    auto dir = [](double a) { return Vec{std::cos(a), std::sin(a)}; };
    const double h0 = map.support(t, x, dir(theta));
    const double hp = map.support(t, x, dir(theta + delta));
    const double hm = map.support(t, x, dir(theta - delta));
    const double dh = (hp - hm) / (2.0 * delta);
    // exposed point of a smooth support function: h l + h' l_perp
    return Vec{h0 * std::cos(theta) - dh * std::sin(theta),
               h0 * std::sin(theta) + dh * std::cos(theta)};
}

Trajectory integrate_selection(const SetMap& map, double eps, const Vec& x0,
                               const SelectionStrategy& strategy, int n_steps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (n_steps < 1) throw std::invalid_argument("need at least one step");
    if (static_cast<int>(x0.size()) != map.dimension())
        throw std::invalid_argument("initial state dimension mismatch");
    if (!map.domain().contains(x0, 1e-9))
        throw NumericError("initial state outside the declared domain");
    if (strategy.kind == SelectionStrategy::Kind::fixed_control && !map.origin())
        throw std::invalid_argument("fixed-control selection requires a control-induced map");

    const double horizon = 1.0 / eps;
    const double dt = horizon / n_steps;
    Trajectory traj;
    traj.dimension = map.dimension();
    traj.eps = eps;
    traj.times.resize(static_cast<std::size_t>(n_steps) + 1);
    traj.states.resize(static_cast<std::size_t>(n_steps) + 1);
    traj.derivs.resize(static_cast<std::size_t>(n_steps));
    for (int k = 0; k <= n_steps; ++k) traj.times[static_cast<std::size_t>(k)] = dt * k;
    traj.states[0] = x0;
    for (int k = 0; k < n_steps; ++k) {
        const double t = traj.times[static_cast<std::size_t>(k)];
        const Vec& xk = traj.states[static_cast<std::size_t>(k)];
        Vec deriv;
        if (strategy.kind == SelectionStrategy::Kind::fixed_control) {
            deriv = map.origin()->g_sum(t, xk, strategy.piece_at(t));
            for (double& v : deriv) v *= eps;
        } else {
            deriv = support_point(map, t, xk, strategy.piece_at(t));
            for (double& v : deriv) v *= eps;
        }
        if (!all_finite(deriv)) throw NumericError("non-finite derivative");
        traj.derivs[static_cast<std::size_t>(k)] = deriv;
        Vec next = euler_step(xk, dt, deriv);
        if (!map.domain().contains(next, 1e-9))
            throw NumericError("trajectory left the declared domain");
        traj.states[static_cast<std::size_t>(k) + 1] = std::move(next);
    }
    return traj;
}

std::shared_ptr<const StepSetCache> precompute_step_sets(const SetMap& map, double eps,
                                                         const std::vector<double>& times,
                                                         GridPtr grid) {
    if (map.lipschitz() != 0.0)
        throw std::invalid_argument("step-set caching requires an x-independent map");
    auto cache = std::make_shared<StepSetCache>();
    const std::size_t n = times.empty() ? 0 : times.size() - 1;
    cache->sets.resize(n);
    const Vec probe = map.domain().center();
    parallel_for(static_cast<int>(n), [&](int k) {
        cache->sets[static_cast<std::size_t>(k)] = std::make_shared<const PointQuery>(
            scale(eval(map, times[static_cast<std::size_t>(k)], probe, grid), eps));
    });
    return std::const_pointer_cast<const StepSetCache>(std::move(cache));
}

TrackResult filippov_track(const SetMap& map, double eps, const Trajectory& reference,
                           GridPtr grid, const StepSetCache* cache) {
    if (reference.steps() < 1) throw std::invalid_argument("empty reference trajectory");
    if (reference.dimension != map.dimension())
        throw std::invalid_argument("reference dimension mismatch");
    if (!map.domain().contains(reference.states[0], 1e-9))
        throw NumericError("reference start outside the declared domain");
    const int n = reference.steps();
    const double horizon = reference.horizon();
    const bool x_independent = map.lipschitz() == 0.0;

    TrackResult result;
    result.tracked.dimension = reference.dimension;
    result.tracked.eps = eps;
    result.tracked.times = reference.times;
    result.tracked.states.resize(static_cast<std::size_t>(n) + 1);
    result.tracked.derivs.resize(static_cast<std::size_t>(n));
    result.tracked.states[0] = reference.states[0];

    for (int k = 0; k < n; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        const double t = reference.times[kk];
        const double dt = reference.times[kk + 1] - reference.times[kk];
        const Vec& yk = reference.states[kk];
        const Vec& xk = result.tracked.states[kk];

        std::shared_ptr<const PointQuery> shared_set;
        const PointQuery* set_at_y = nullptr;
        if (cache && kk < cache->sets.size()) {
            set_at_y = cache->sets[kk].get();
        } else {
            shared_set = std::make_shared<const PointQuery>(scale(eval(map, t, yk, grid), eps));
            set_at_y = shared_set.get();
        }
        result.defect_integral += dt * set_at_y->distance(reference.derivs[kk]);

        // projection target: the set at the tracker's own state
        std::shared_ptr<const PointQuery> own;
        const PointQuery* set_at_x = set_at_y;
        if (!x_independent) {
            own = std::make_shared<const PointQuery>(scale(eval(map, t, xk, grid), eps));
            set_at_x = own.get();
        }
        Vec deriv = set_at_x->project(reference.derivs[kk]);
        result.tracked.derivs[kk] = deriv;
        Vec next = euler_step(xk, dt, deriv);
        if (!map.domain().contains(next, 1e-9))
            throw NumericError("tracked trajectory left the declared domain");
        result.tracked.states[kk + 1] = std::move(next);
        result.realized_sup = std::max(
            result.realized_sup, distance(result.tracked.states[kk + 1], reference.states[kk + 1]));
    }
    result.certified_bound =
        std::exp(eps * map.lipschitz() * horizon) * result.defect_integral;
    return result;
}

std::vector<SelectionStrategy> sample_strategies(const SetMap& map, double eps, int n_samples,
                                                 std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("need at least one sample");
    const int d = map.dimension();
    const double horizon = 1.0 / eps;
    std::vector<SelectionStrategy> pool;
    for (int i = 0; i < d; ++i) {
        Vec plus(static_cast<std::size_t>(d), 0.0), minus(static_cast<std::size_t>(d), 0.0);
        plus[static_cast<std::size_t>(i)] = 1.0;
        minus[static_cast<std::size_t>(i)] = -1.0;
        pool.push_back(SelectionStrategy::extremal(plus));
        pool.push_back(SelectionStrategy::extremal(minus));
    }
    if (map.origin() && map.origin()->control_dim > 0) {
        const Box& ubox = map.origin()->control_box;
        const int k = ubox.dim();
        for (int corner = 0; corner < (1 << k); ++corner) {
            Vec u(static_cast<std::size_t>(k));
            for (int a = 0; a < k; ++a)
                u[static_cast<std::size_t>(a)] = (corner >> a) & 1 ? ubox.hi[a] : ubox.lo[a];
            pool.push_back(SelectionStrategy::fixed_control(std::move(u)));
        }
    }
    const double dwell = map.max_period(horizon / 8.0);
    for (std::uint64_t i = pool.size(); static_cast<int>(pool.size()) < n_samples; ++i)
        pool.push_back(
            SelectionStrategy::random_switching(derive_seed(seed, i), d, horizon, dwell));
    pool.resize(static_cast<std::size_t>(n_samples));
    return pool;
}

DistanceEstimate solution_set_distance(const SetMap& F, const SetMap& G, double eps,
                                       const Vec& x0, int n_samples, int n_steps,
                                       std::uint64_t seed, GridPtr grid) {
    if (F.dimension() != G.dimension()) throw std::invalid_argument("map dimension mismatch");
    const auto run_side = [&](const SetMap& from, const SetMap& into) {
        const std::vector<SelectionStrategy> strategies =
            sample_strategies(from, eps, n_samples, seed);
        std::shared_ptr<const StepSetCache> cache;
        if (into.lipschitz() == 0.0) {
            // all samples share one time grid, so target sets can be reused
            const double dt = (1.0 / eps) / n_steps;
            std::vector<double> times(static_cast<std::size_t>(n_steps) + 1);
            for (int k = 0; k <= n_steps; ++k) times[static_cast<std::size_t>(k)] = dt * k;
            cache = precompute_step_sets(into, eps, times, grid);
        }
        std::vector<double> realized(strategies.size(), 0.0);
        parallel_for(static_cast<int>(strategies.size()), [&](int i) {
            const Trajectory traj =
                integrate_selection(from, eps, x0, strategies[static_cast<std::size_t>(i)], n_steps);
            realized[static_cast<std::size_t>(i)] =
                filippov_track(into, eps, traj, grid, cache.get()).realized_sup;
        });
        double worst = 0.0;
        for (double r : realized) worst = std::max(worst, r);
        return worst;
    };
    DistanceEstimate est;
    est.forward = run_side(F, G);
    est.backward = run_side(G, F);
    return est;
}

std::pair<double, double> endpoint_reach_interval(const SetMap& map, double eps, double x0,
                                                  int n_steps) {
    if (map.dimension() != 1)
        throw std::invalid_argument("endpoint reach intervals require d = 1");
    if (!(eps > 0) || n_steps < 1) throw std::invalid_argument("bad integration parameters");
    const double horizon = 1.0 / eps;
    const double dt = horizon / n_steps;
    const Vec up{1.0}, down{-1.0};
    auto rk4 = [&](bool maximal) {
        auto f = [&](double t, double x) {
            return maximal ? eps * map.support(t, Vec{x}, up) : -eps * map.support(t, Vec{x}, down);
        };
        double x = x0, t = 0.0;
        for (int k = 0; k < n_steps; ++k) {
            const double k1 = f(t, x);
            const double k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1);
            const double k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2);
            const double k4 = f(t + dt, x + dt * k3);
            x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = dt * (k + 1);
            if (!std::isfinite(x)) throw NumericError("extremal branch diverged");
        }
        return x;
    };
    const double hi = rk4(true);
    const double lo = rk4(false);
    return {lo, hi};
}

void write_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "t";
    for (int i = 1; i <= trajectory.dimension; ++i) out << ",x_" << i;
    out << "\n";
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
        put(trajectory.times[k]);
        for (double v : trajectory.states[k]) {
            out << ",";
            put(v);
        }
        out << "\n";
    }
}

}  // namespace incavg
