#include "incavg/setmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "incavg/rng.hpp"

namespace incavg {

std::string to_string(Structure s) {
    switch (s) {
        case Structure::generic: return "generic";
        case Structure::sum_of_periodic: return "sum-of-periodic";
        case Structure::componentwise_periodic: return "componentwise-periodic";
        case Structure::control_induced: return "control-induced";
    }
    return "generic";
}

SetMap::SetMap(Spec spec) : spec_(std::move(spec)) {
    if (spec_.dimension < 1) throw std::invalid_argument("set map dimension must be positive");
    if (!spec_.support) throw std::invalid_argument("set map requires a support oracle");
    if (spec_.domain.dim() != spec_.dimension)
        throw std::invalid_argument("domain dimension mismatch");
    for (double T : spec_.periods)
        if (!(T > 0)) throw std::invalid_argument("periods must be positive");
}

double SetMap::support(double t, const Vec& x, const Vec& ell) const {
    if (static_cast<int>(x.size()) != spec_.dimension)
        throw std::invalid_argument("state dimension mismatch");
    if (!all_finite(x)) throw NumericError("non-finite state");
    if (!spec_.domain.contains(x, 1e-9))
        throw NumericError("evaluation outside the declared domain");
    const double h = spec_.support(t, x, ell);
    if (!std::isfinite(h)) throw NumericError("support oracle returned a non-finite value");
    return h;
}

std::vector<double> SetMap::support_all(double t, const Vec& x, const DirectionGrid& grid) const {
    if (static_cast<int>(x.size()) != spec_.dimension)
        throw std::invalid_argument("state dimension mismatch");
    if (!spec_.domain.contains(x, 1e-9))
        throw NumericError("evaluation outside the declared domain");
    std::vector<double> h;
    if (spec_.support_all) {
        h = spec_.support_all(t, x, grid);
    } else {
        h.resize(grid.size());
        for (int i = 0; i < grid.size(); ++i) h[i] = spec_.support(t, x, grid.directions[i]);
    }
    for (double v : h)
        if (!std::isfinite(v)) throw NumericError("support oracle returned a non-finite value");
    return h;
}

double SetMap::max_period(double fallback) const {
    double m = 0.0;
    for (double T : spec_.periods) m = std::max(m, T);
    return m > 0 ? m : fallback;
}

ConvexSet eval(const SetMap& map, double t, const Vec& x, GridPtr grid) {
    if (!grid) throw std::invalid_argument("null direction grid");
    if (grid->dimension != map.dimension()) throw std::invalid_argument("grid dimension mismatch");
    return ConvexSet(grid, map.support_all(t, x, *grid));
}

SetMap sum_of_periodic(std::vector<SetMap> terms) {
    if (terms.empty()) throw std::invalid_argument("empty term list");
    const int d = terms.front().dimension();
    SetMap::Spec spec;
    spec.dimension = d;
    spec.domain = terms.front().domain();
    bool autonomous = true;
    for (const SetMap& term : terms) {
        if (term.dimension() != d) throw std::invalid_argument("term dimension mismatch");
        spec.bound += term.bound();
        spec.lipschitz += term.lipschitz();
        for (double T : term.periods()) spec.periods.push_back(T);
        spec.domain = spec.domain.intersect(term.domain());
        autonomous = autonomous && term.autonomous();
    }
    spec.structure = Structure::sum_of_periodic;
    spec.autonomous = autonomous;
    auto shared = std::make_shared<const std::vector<SetMap>>(std::move(terms));
    spec.terms = shared;
    spec.support = [shared](double t, const Vec& x, const Vec& ell) {
        double s = 0.0;
        for (const SetMap& term : *shared) s += term.support(t, x, ell);
        return s;
    };
    spec.support_all = [shared](double t, const Vec& x, const DirectionGrid& grid) {
        std::vector<double> acc(grid.size(), 0.0);
        for (const SetMap& term : *shared) {
            const std::vector<double> h = term.support_all(t, x, grid);
            for (int i = 0; i < grid.size(); ++i) acc[i] += h[i];
        }
        return acc;
    };
    return SetMap(std::move(spec));
}

SetMap partial_average(const SetMap& map, double T, int quad_nodes) {
    if (!(T > 0)) throw std::invalid_argument("averaging window must be positive");
    if (quad_nodes < 1) throw std::invalid_argument("quadrature nodes must be positive");
    auto base = std::make_shared<SetMap>(map);
    SetMap::Spec spec;
    spec.dimension = map.dimension();
    spec.bound = map.bound();
    spec.lipschitz = map.lipschitz();
    spec.periods = map.periods();
    spec.structure = map.structure();
    spec.domain = map.domain();
    spec.autonomous = map.autonomous();
    spec.control_grid_error = map.control_grid_error();
    spec.origin = map.origin();
    const double step = T / quad_nodes;
    spec.support = [base, step, quad_nodes](double t, const Vec& x, const Vec& ell) {
        double acc = 0.0;
        for (int i = 0; i < quad_nodes; ++i) acc += base->support(t + (i + 0.5) * step, x, ell);
        return acc / quad_nodes;
    };
    spec.support_all = [base, step, quad_nodes](double t, const Vec& x, const DirectionGrid& grid) {
        std::vector<double> acc(grid.size(), 0.0);
        for (int i = 0; i < quad_nodes; ++i) {
            const std::vector<double> h = base->support_all(t + (i + 0.5) * step, x, grid);
            for (int k = 0; k < grid.size(); ++k) acc[k] += h[k];
        }
        for (double& v : acc) v /= quad_nodes;
        return acc;
    };
    return SetMap(std::move(spec));
}

Vec ControlSystem::g_sum(double t, const Vec& x, const Vec& u) const {
    Vec acc(dimension, 0.0);
    for (const ControlTerm& term : terms) {
        const Vec g = term.g(t, x, u);
        for (int i = 0; i < dimension; ++i) acc[i] += g[i];
    }
    return acc;
}

std::vector<double> ControlSystem::term_bounds() const {
    std::vector<double> out;
    out.reserve(terms.size());
    for (const ControlTerm& term : terms) out.push_back(term.bound);
    return out;
}

std::vector<double> ControlSystem::term_lipschitz() const {
    std::vector<double> out;
    out.reserve(terms.size());
    for (const ControlTerm& term : terms) out.push_back(term.lipschitz);
    return out;
}

double ControlSystem::bound_sum() const {
    double s = 0.0;
    for (const ControlTerm& term : terms) s += term.bound;
    return s;
}

double ControlSystem::lipschitz_sum() const {
    double s = 0.0;
    for (const ControlTerm& term : terms) s += term.lipschitz;
    return s;
}

std::vector<double> ControlSystem::distinct_periods(double tol) const {
    std::vector<double> all;
    for (const ControlTerm& term : terms)
        for (double T : term.entry_periods) all.push_back(T);
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double T : all)
        if (out.empty() || std::fabs(T - out.back()) > tol) out.push_back(T);
    return out;
}

double ControlSystem::term_period(int j) const {
    const auto& ps = terms[static_cast<std::size_t>(j)].entry_periods;
    double m = 0.0;
    for (double T : ps) m = std::max(m, T);
    return m;
}

std::vector<Vec> tensor_grid(const Box& box, const std::vector<int>& counts) {
    const int k = box.dim();
    if (static_cast<int>(counts.size()) != k)
        throw std::invalid_argument("grid counts dimension mismatch");
    if (k == 0) return {Vec{}};
    std::vector<Vec> grid;
    std::size_t total = 1;
    for (int c : counts) {
        if (c < 1) throw std::invalid_argument("grid counts must be positive");
        total *= static_cast<std::size_t>(c);
    }
    grid.reserve(total);
    std::vector<int> idx(k, 0);
    for (;;) {
        Vec u(k);
        for (int a = 0; a < k; ++a)
            u[a] = counts[a] == 1
                       ? 0.5 * (box.lo[a] + box.hi[a])
                       : box.lo[a] + (box.hi[a] - box.lo[a]) * idx[a] / (counts[a] - 1);
        grid.push_back(std::move(u));
        int a = 0;
        for (; a < k; ++a) {
            if (++idx[a] < counts[a]) break;
            idx[a] = 0;
        }
        if (a == k) break;
    }
    return grid;
}

void finalize_control_grid(ControlSystem& sys) {
    if (!sys.control_grid.empty()) return;
    if (sys.control_dim == 0) {
        sys.control_grid = {Vec{}};
        return;
    }
    if (sys.control_counts.empty())
        sys.control_counts.assign(static_cast<std::size_t>(sys.control_dim), 101);
    sys.control_grid = tensor_grid(sys.control_box, sys.control_counts);
}

namespace {

std::vector<double> max_dot_over_cloud(const std::vector<Vec>& cloud, const DirectionGrid& grid) {
    std::vector<double> h(grid.size(), -std::numeric_limits<double>::infinity());
    for (const Vec& p : cloud)
        for (int i = 0; i < grid.size(); ++i)
            h[i] = std::max(h[i], dot(grid.directions[i], p));
    return h;
}

double refined_grid_error(const ControlSystem& sys) {
    if (sys.control_dim == 0 || sys.control_counts.empty()) return 0.0;
    std::vector<int> refined(sys.control_counts);
    for (int& c : refined) c = 2 * c - 1;
    const std::vector<Vec> fine = tensor_grid(sys.control_box, refined);
    SplitMix64 rng(0x5eedu);
    double err = 0.0;
    for (int s = 0; s < 24; ++s) {
        const double t = rng.uniform(0.0, 10.0);
        const Vec x = rng.point_in_box(sys.domain);
        const Vec ell = rng.unit_vector(sys.dimension);
        double coarse = -std::numeric_limits<double>::infinity();
        for (const Vec& u : sys.control_grid)
            coarse = std::max(coarse, dot(ell, sys.g_sum(t, x, u)));
        double refined_val = coarse;
        for (const Vec& u : fine) refined_val = std::max(refined_val, dot(ell, sys.g_sum(t, x, u)));
        err = std::max(err, refined_val - coarse);
    }
    return err;
}

}  // namespace

SetMap control_map(std::shared_ptr<const ControlSystem> sys) {
    if (!sys) throw std::invalid_argument("null control system");
    if (sys->terms.empty()) throw std::invalid_argument("empty term list");
    if (sys->control_grid.empty()) throw std::invalid_argument("empty control grid");
    for (const Vec& u : sys->control_grid)
        if (static_cast<int>(u.size()) != sys->control_dim)
            throw std::invalid_argument("control sample dimension mismatch");

    SetMap::Spec spec;
    spec.dimension = sys->dimension;
    spec.bound = sys->bound_sum();
    spec.lipschitz = sys->lipschitz_sum();
    spec.periods = sys->distinct_periods();
    spec.structure = Structure::control_induced;
    spec.domain = sys->domain;
    spec.origin = sys;
    spec.control_grid_error = refined_grid_error(*sys);
    spec.support = [sys](double t, const Vec& x, const Vec& ell) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& u : sys->control_grid) best = std::max(best, dot(ell, sys->g_sum(t, x, u)));
        return best;
    };
    spec.support_all = [sys](double t, const Vec& x, const DirectionGrid& grid) {
        std::vector<Vec> cloud;
        cloud.reserve(sys->control_grid.size());
        for (const Vec& u : sys->control_grid) cloud.push_back(sys->g_sum(t, x, u));
        return max_dot_over_cloud(cloud, grid);
    };
    return SetMap(std::move(spec));
}

SetMap control_map(const ControlSystem& sys) {
    return control_map(std::make_shared<const ControlSystem>(sys));
}

void validate_setmap(const SetMap& map, int samples, std::uint64_t seed, double tol) {
    SplitMix64 rng(seed);
    const double t_span = 10.0 * map.max_period(1.0);
    for (int s = 0; s < samples; ++s) {
        const double t = rng.uniform(0.0, t_span);
        const Vec x = rng.point_in_box(map.domain());
        const Vec ell = rng.unit_vector(map.dimension());
        const double h = map.support(t, x, ell);
        if (std::fabs(h) > map.bound() + tol)
            throw NumericError("support value exceeds the declared norm bound");
        const Vec x2 = rng.point_in_box(map.domain());
        const double h2 = map.support(t, x2, ell);
        if (std::fabs(h - h2) > map.lipschitz() * distance(x, x2) + tol)
            throw NumericError("support values violate the declared Lipschitz constant");
        if (map.periods().size() == 1 && map.structure() != Structure::componentwise_periodic) {
            const double hp = map.support(t + map.periods()[0], x, ell);
            if (std::fabs(hp - h) > 1e-9 + tol)
                throw NumericError("oracle is not periodic with the declared period");
        }
    }
}

void validate_control_system(const ControlSystem& sys, int samples, std::uint64_t seed,
                             double tol) {
    SplitMix64 rng(seed);
    if (sys.control_grid.empty()) throw NumericError("empty control grid");
    for (const Vec& u : sys.control_grid)
        if (!sys.control_box.contains(u, 1e-12) && sys.control_dim > 0)
            throw NumericError("control sample outside U");
    for (int s = 0; s < samples; ++s) {
        const double t = rng.uniform(0.0, 20.0);
        const Vec x = rng.point_in_box(sys.domain);
        const Vec x2 = rng.point_in_box(sys.domain);
        const Vec& u = sys.control_grid[rng.next() % sys.control_grid.size()];
        for (const ControlTerm& term : sys.terms) {
            const Vec g = term.g(t, x, u);
            if (norm(g) > term.bound + tol)
                throw NumericError("term exceeds its declared norm bound");
            const Vec g2 = term.g(t, x2, u);
            Vec diff(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) diff[i] = g[i] - g2[i];
            if (norm(diff) > term.lipschitz * distance(x, x2) + tol)
                throw NumericError("term violates its declared Lipschitz constant");
        }
    }
}

}  // namespace incavg
