#include "incavg/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "incavg/bounds.hpp"

namespace incavg {

namespace {

SetMap freeze_autonomous(const SetMap& map) {
    auto base = std::make_shared<SetMap>(map);
    SetMap::Spec spec;
    spec.dimension = map.dimension();
    spec.bound = map.bound();
    spec.lipschitz = map.lipschitz();
    spec.structure = Structure::generic;
    spec.domain = map.domain();
    spec.autonomous = true;
    spec.control_grid_error = map.control_grid_error();
    spec.support = [base](double, const Vec& x, const Vec& ell) {
        return base->support(0.0, x, ell);
    };
    spec.support_all = [base](double, const Vec& x, const DirectionGrid& grid) {
        return base->support_all(0.0, x, grid);
    };
    return SetMap(std::move(spec));
}

}  // namespace

SetMap average_periodic(const SetMap& map, int quad_nodes) {
    if (map.autonomous()) return map;
    if (map.structure() == Structure::sum_of_periodic && map.terms()) {
        auto terms = map.terms();
        auto averaged = std::make_shared<std::vector<SetMap>>();
        for (const SetMap& term : *terms) {
            if (term.periods().size() != 1)
                throw std::invalid_argument("each summand must declare exactly one period");
            averaged->push_back(
                freeze_autonomous(partial_average(term, term.periods()[0], quad_nodes)));
        }
        SetMap::Spec spec;
        spec.dimension = map.dimension();
        spec.bound = map.bound();
        spec.lipschitz = map.lipschitz();
        spec.structure = Structure::generic;
        spec.domain = map.domain();
        spec.autonomous = true;
        spec.support = [averaged](double, const Vec& x, const Vec& ell) {
            double s = 0.0;
            for (const SetMap& term : *averaged) s += term.support(0.0, x, ell);
            return s;
        };
        spec.support_all = [averaged](double, const Vec& x, const DirectionGrid& grid) {
            std::vector<double> acc(grid.size(), 0.0);
            for (const SetMap& term : *averaged) {
                const std::vector<double> h = term.support_all(0.0, x, grid);
                for (int i = 0; i < grid.size(); ++i) acc[i] += h[i];
            }
            return acc;
        };
        return SetMap(std::move(spec));
    }
    if (map.structure() == Structure::componentwise_periodic && !map.periods().empty()) {
        SetMap nested = map;
        for (double T : dedupe_periods(map.periods()))
            nested = partial_average(nested, T, quad_nodes);
        return freeze_autonomous(nested);
    }
    throw std::invalid_argument(
        "averaging requires a sum-of-periodic or componentwise-periodic map with declared periods");
}

namespace {

struct TorusAxes {
    std::vector<double> periods;     // one per axis
    std::vector<int> axis_of_entry;  // flattened (term | term,entry) -> axis
};

TorusAxes build_axes(const ControlSystem& sys) {
    TorusAxes axes;
    axes.periods = sys.distinct_periods();
    if (axes.periods.empty()) throw std::invalid_argument("control system declares no periods");
    if (axes.periods.size() > 3)
        throw std::invalid_argument("torus quadrature supports at most 3 distinct periods");
    auto axis_of = [&axes](double T) {
        for (std::size_t a = 0; a < axes.periods.size(); ++a)
            if (std::fabs(axes.periods[a] - T) <= 1e-12) return static_cast<int>(a);
        throw std::logic_error("period not in distinct set");
    };
    for (const ControlTerm& term : sys.terms) {
        if (term.entry_periods.empty())
            throw std::invalid_argument("control term declares no period");
        for (double T : term.entry_periods) axes.axis_of_entry.push_back(axis_of(T));
    }
    return axes;
}

}  // namespace

ConvexSet chattering_average(const ControlSystem& sys, const Vec& y, GridPtr grid,
                             int torus_nodes) {
    if (!grid) throw std::invalid_argument("null direction grid");
    if (grid->dimension != sys.dimension) throw std::invalid_argument("grid dimension mismatch");
    if (sys.control_grid.empty()) throw std::invalid_argument("empty control grid");
    if (torus_nodes < 1) throw std::invalid_argument("torus nodes must be positive");
    const TorusAxes axes = build_axes(sys);
    const int n_axes = static_cast<int>(axes.periods.size());
    const int d = sys.dimension;

    std::vector<double> acc(static_cast<std::size_t>(grid->size()), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(n_axes), 0);
    Vec phase(static_cast<std::size_t>(n_axes));
    std::size_t total_nodes = 1;
    for (int a = 0; a < n_axes; ++a) total_nodes *= static_cast<std::size_t>(torus_nodes);

    std::vector<Vec> cloud(sys.control_grid.size(), Vec(static_cast<std::size_t>(d)));
    for (std::size_t node = 0; node < total_nodes; ++node) {
        for (int a = 0; a < n_axes; ++a) phase[static_cast<std::size_t>(a)] = (idx[a] + 0.5) / torus_nodes;
        // point cloud of the phase-staggered vector field over the control grid
        for (std::size_t ui = 0; ui < sys.control_grid.size(); ++ui) {
            const Vec& u = sys.control_grid[ui];
            Vec& p = cloud[ui];
            std::fill(p.begin(), p.end(), 0.0);
            std::size_t flat = 0;
            for (const ControlTerm& term : sys.terms) {
                if (term.entry_periods.size() == 1) {
                    const int a = axes.axis_of_entry[flat++];
                    const Vec g = term.g(phase[a] * axes.periods[a], y, u);
                    for (int i = 0; i < d; ++i) p[i] += g[i];
                } else {
                    for (int i = 0; i < d; ++i) {
                        const int a = axes.axis_of_entry[flat++];
                        const Vec g = term.g(phase[a] * axes.periods[a], y, u);
                        p[i] += g[i];
                    }
                }
            }
        }
        for (int k = 0; k < grid->size(); ++k) {
            double best = -std::numeric_limits<double>::infinity();
            for (const Vec& p : cloud) best = std::max(best, dot(grid->directions[k], p));
            acc[static_cast<std::size_t>(k)] += best;
        }
        for (int a = 0; a < n_axes; ++a) {
            if (++idx[a] < torus_nodes) break;
            idx[a] = 0;
        }
    }
    for (double& v : acc) v /= static_cast<double>(total_nodes);
    return ConvexSet(grid, std::move(acc));
}

double chattering_radius(const ControlSystem& sys, double y, int torus_nodes) {
    if (sys.dimension != 1) throw std::invalid_argument("radius requires a scalar system");
    auto grid = DirectionGrid::make(1);
    const ConvexSet s = chattering_average(sys, Vec{y}, grid, torus_nodes);
    return 0.5 * (s.value(0) + s.value(1));
}

SetMap averaged_control_map(std::shared_ptr<const ControlSystem> sys, GridPtr grid,
                            int torus_nodes, int state_nodes) {
    if (!sys) throw std::invalid_argument("null control system");
    if (!grid) throw std::invalid_argument("null direction grid");
    const int d = sys->dimension;
    if (grid->dimension != d) throw std::invalid_argument("grid dimension mismatch");
    const bool state_independent = sys->lipschitz_sum() == 0.0;

    SetMap::Spec spec;
    spec.dimension = d;
    spec.bound = sys->bound_sum();
    spec.lipschitz = sys->lipschitz_sum();
    spec.structure = Structure::generic;
    spec.domain = sys->domain;
    spec.autonomous = true;
    spec.origin = sys;

    if (state_independent) {
        auto table = std::make_shared<ConvexSet>(
            chattering_average(*sys, sys->domain.center(), grid, torus_nodes));
        spec.support = [table, grid](double, const Vec&, const Vec& ell) {
            return table->value(grid->nearest(ell));
        };
        spec.support_all = [table, grid](double, const Vec&, const DirectionGrid& g) {
            if (!g.equals(*grid))
                throw std::invalid_argument("tabulated averaged map queried on a foreign grid");
            return table->values();
        };
        return SetMap(std::move(spec));
    }

    if (state_nodes < 2) throw std::invalid_argument("state grid needs at least two nodes");
    if (d == 1) {
        const double lo = sys->domain.lo[0], hi = sys->domain.hi[0];
        auto ys = std::make_shared<std::vector<double>>();
        auto table = std::make_shared<std::vector<std::vector<double>>>();
        for (int i = 0; i < state_nodes; ++i) {
            const double y = lo + (hi - lo) * i / (state_nodes - 1);
            ys->push_back(y);
            table->push_back(chattering_average(*sys, Vec{y}, grid, torus_nodes).values());
        }
        auto interp = [ys, table](double y, int k) {
            const auto& yy = *ys;
            const std::size_t kk = static_cast<std::size_t>(k);
            if (y <= yy.front()) return table->front()[kk];
            if (y >= yy.back()) return table->back()[kk];
            const auto it = std::upper_bound(yy.begin(), yy.end(), y);
            const std::size_t i1 = static_cast<std::size_t>(it - yy.begin());
            const std::size_t i0 = i1 - 1;
            const double w = (y - yy[i0]) / (yy[i1] - yy[i0]);
            return (1 - w) * (*table)[i0][kk] + w * (*table)[i1][kk];
        };
        spec.support = [interp, grid](double, const Vec& x, const Vec& ell) {
            return interp(x[0], grid->nearest(ell));
        };
        spec.support_all = [interp, grid](double, const Vec& x, const DirectionGrid& g) {
            if (!g.equals(*grid))
                throw std::invalid_argument("tabulated averaged map queried on a foreign grid");
            std::vector<double> h(static_cast<std::size_t>(g.size()));
            for (int k = 0; k < g.size(); ++k) h[static_cast<std::size_t>(k)] = interp(x[0], k);
            return h;
        };
        return SetMap(std::move(spec));
    }
    if (d == 2) {
        const Box dom = sys->domain;
        auto table = std::make_shared<std::vector<std::vector<std::vector<double>>>>();
        table->resize(static_cast<std::size_t>(state_nodes));
        for (int i = 0; i < state_nodes; ++i) {
            (*table)[i].resize(static_cast<std::size_t>(state_nodes));
            const double x0 = dom.lo[0] + (dom.hi[0] - dom.lo[0]) * i / (state_nodes - 1);
            for (int j = 0; j < state_nodes; ++j) {
                const double x1 = dom.lo[1] + (dom.hi[1] - dom.lo[1]) * j / (state_nodes - 1);
                (*table)[i][j] = chattering_average(*sys, Vec{x0, x1}, grid, torus_nodes).values();
            }
        }
        auto interp = [table, dom, state_nodes](const Vec& x, int k) {
            auto locate = [state_nodes](double v, double lo, double hi, int& i0, double& w) {
                double s = (v - lo) / (hi - lo) * (state_nodes - 1);
                s = std::min(std::max(s, 0.0), static_cast<double>(state_nodes - 1));
                i0 = std::min(static_cast<int>(s), state_nodes - 2);
                w = s - i0;
            };
            int i0, j0;
            double wi, wj;
            locate(x[0], dom.lo[0], dom.hi[0], i0, wi);
            locate(x[1], dom.lo[1], dom.hi[1], j0, wj);
            const std::size_t kk = static_cast<std::size_t>(k);
            return (1 - wi) * ((1 - wj) * (*table)[i0][j0][kk] + wj * (*table)[i0][j0 + 1][kk]) +
                   wi * ((1 - wj) * (*table)[i0 + 1][j0][kk] + wj * (*table)[i0 + 1][j0 + 1][kk]);
        };
        spec.support = [interp, grid](double, const Vec& x, const Vec& ell) {
            return interp(x, grid->nearest(ell));
        };
        spec.support_all = [interp, grid](double, const Vec& x, const DirectionGrid& g) {
            if (!g.equals(*grid))
                throw std::invalid_argument("tabulated averaged map queried on a foreign grid");
            std::vector<double> h(static_cast<std::size_t>(g.size()));
            for (int k = 0; k < g.size(); ++k) h[static_cast<std::size_t>(k)] = interp(x, k);
            return h;
        };
        return SetMap(std::move(spec));
    }
    throw std::invalid_argument("tabulated averaged maps support d in {1,2} only");
}

Gauge estimate_gauge(const SetMap& map, const SetMap& averaged,
                     const std::vector<GaugeCandidate>& candidates,
                     const std::vector<double>& eps_list, const std::vector<Vec>& x_samples,
                     const std::vector<double>& s0_samples, GridPtr grid, int quad_nodes) {
    if (!averaged.autonomous())
        throw std::invalid_argument("the comparison map must be autonomous");
    if (x_samples.empty() || s0_samples.empty())
        throw std::invalid_argument("gauge estimation needs state and time samples");
    Gauge gauge;
    for (const GaugeCandidate& cand : candidates) {
        Gauge::Table table;
        table.name = cand.name;
        for (double eps : eps_list) {
            if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
            const double delta = cand.delta(eps);
            if (!(delta > 0) || !std::isfinite(delta))
                throw std::invalid_argument("candidate window must be positive");
            const double window = delta / eps;
            const SetMap windowed = partial_average(map, window, quad_nodes);
            double eta = 0.0;
            for (const Vec& x : x_samples) {
                const ConvexSet target = eval(averaged, 0.0, x, grid);
                for (double s0 : s0_samples)
                    eta = std::max(eta, hausdorff(eval(windowed, s0, x, grid), target));
            }
            table.rows.push_back({eps, delta, eta});
        }
        gauge.tables.push_back(std::move(table));
    }
    return gauge;
}

std::vector<GaugeCandidate> default_gauge_candidates(const SetMap& map) {
    double period_sum = 0.0;
    for (double T :
         dedupe_periods(map.periods().empty() ? std::vector<double>{1.0} : map.periods()))
        period_sum += T;
    std::vector<GaugeCandidate> out;
    out.push_back({"linear", [period_sum](double eps) { return period_sum * eps; }});
    out.push_back({"sqrt", [](double eps) { return std::sqrt(eps); }});
    return out;
}

DeltaModulus estimate_delta_modulus(const SetMap& map, const SetMap& averaged,
                                    const std::vector<double>& eps_list,
                                    const std::vector<Vec>& x_samples, GridPtr grid, int t_grid) {
    if (!averaged.autonomous())
        throw std::invalid_argument("the comparison map must be autonomous");
    if (t_grid < 8) throw std::invalid_argument("T grid too small");
    if (x_samples.empty()) throw std::invalid_argument("delta estimation needs state samples");
    DeltaModulus result;
    double min_period = map.max_period(1.0);
    for (double T : map.periods()) min_period = std::min(min_period, T);
    const double micro = std::min(min_period, 1.0) / 64.0;
    for (double eps : eps_list) {
        if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
        const double t_max = 1.0 / eps;
        const double t_min = t_max / 1024.0;
        const double ratio = std::pow(t_max / t_min, 1.0 / (t_grid - 1));
        double best_full = 0.0, best_half = 0.0;
        for (const Vec& x : x_samples) {
            const std::vector<double> hbar = averaged.support_all(0.0, x, *grid);
            std::vector<double> integral(static_cast<std::size_t>(grid->size()), 0.0);
            double t_prev = 0.0;
            double target = t_min;
            for (int k = 0; k < t_grid; ++k) {
                const int steps =
                    std::max(1, static_cast<int>(std::ceil((target - t_prev) / micro)));
                const double h = (target - t_prev) / steps;
                for (int s = 0; s < steps; ++s) {
                    const std::vector<double> vals =
                        map.support_all(t_prev + (s + 0.5) * h, x, *grid);
                    for (std::size_t i = 0; i < integral.size(); ++i) integral[i] += h * vals[i];
                }
                double dev = 0.0;
                for (std::size_t i = 0; i < integral.size(); ++i)
                    dev = std::max(dev, std::fabs(integral[i] - target * hbar[i]));
                best_full = std::max(best_full, eps * dev);
                if (k % 2 == 0) best_half = std::max(best_half, eps * dev);
                t_prev = target;
                target = (k == t_grid - 2) ? t_max : target * ratio;
            }
        }
        result.eps.push_back(eps);
        result.delta.push_back(best_full);
        result.refinement.push_back(std::fabs(best_full - best_half));
    }
    return result;
}

std::optional<std::string> commensurability_warning(const std::vector<double>& periods) {
    std::string msg;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        for (std::size_t j = i + 1; j < periods.size(); ++j) {
            const double r = periods[i] / periods[j];
            for (int q = 1; q <= 64; ++q) {
                const double pd = r * q;
                const int p = static_cast<int>(std::lround(pd));
                if (p >= 1 && p <= 64 && std::fabs(r - static_cast<double>(p) / q) < 1e-9) {
                    if (!msg.empty()) msg += "; ";
                    msg += "periods " + std::to_string(periods[i]) + " and " +
                           std::to_string(periods[j]) + " are commensurable within 1e-9 (~" +
                           std::to_string(p) + "/" + std::to_string(q) + ")";
                    break;
                }
            }
        }
    }
    if (msg.empty()) return std::nullopt;
    return msg;
}

}  // namespace incavg
