#include "incavg/catalog.hpp"

#include <cmath>

#include "incavg/bounds.hpp"

namespace incavg {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

SetMap singleton_map(int dim, std::function<Vec(double)> point, std::vector<double> periods,
                     Structure structure, double bound, Box domain) {
    SetMap::Spec spec;
    spec.dimension = dim;
    spec.bound = bound;
    spec.lipschitz = 0.0;
    spec.periods = std::move(periods);
    spec.structure = structure;
    spec.domain = std::move(domain);
    auto fn = std::make_shared<std::function<Vec(double)>>(std::move(point));
    spec.support = [fn](double t, const Vec&, const Vec& ell) { return dot(ell, (*fn)(t)); };
    spec.support_all = [fn](double t, const Vec&, const DirectionGrid& grid) {
        const Vec p = (*fn)(t);
        std::vector<double> h(static_cast<std::size_t>(grid.size()));
        for (int i = 0; i < grid.size(); ++i)
            h[static_cast<std::size_t>(i)] = dot(grid.directions[static_cast<std::size_t>(i)], p);
        return h;
    };
    return SetMap(std::move(spec));
}

CatalogEntry make_scalar_cos(const CatalogOptions& options) {
    Box omega = options.omega_override.value_or(Box::cube(1, 2.0));
    SetMap term = singleton_map(
        1, [](double t) { return Vec{std::cos(kTwoPi * t)}; }, {1.0},
        Structure::sum_of_periodic, 1.0, omega);
    CatalogEntry entry{
        "scalar_cos",
        "scalar singleton inclusion x' in eps*{cos 2 pi t}",
        sum_of_periodic({std::move(term)}),
        nullptr,
        "periodic",
        [](double eps) { return key_lemma_bound(1.0, 0.0, 1.0, eps); },
        std::nullopt,
        std::nullopt,
        Vec{0.0}};
    return entry;
}

CatalogEntry make_rotating_2d(const CatalogOptions& options) {
    Box omega = options.omega_override.value_or(Box::cube(2, 3.0));
    const double bound = std::sqrt(2.0);
    SetMap map = singleton_map(
        2, [](double t) { return Vec{std::cos(kTwoPi * t), std::cos(2.0 * t)}; }, {1.0, kPi},
        Structure::componentwise_periodic, bound, omega);
    CatalogEntry entry{
        "rotating_2d",
        "planar singleton inclusion with entrywise periods (1, pi)",
        std::move(map),
        nullptr,
        "componentwise",
        [bound](double eps) {
            return componentwise_bound(bound, 0.0, {{eps * 1.0, 0.0}, {eps * kPi, 0.0}});
        },
        std::nullopt,
        std::nullopt,
        Vec{0.0, 0.0}};
    return entry;
}

CatalogEntry make_example_5_5(const CatalogOptions& options) {
    auto sys = std::make_shared<ControlSystem>();
    sys->dimension = 1;
    sys->control_dim = 1;
    sys->control_box = Box{{-1.0}, {1.0}};
    sys->control_counts = {options.control_points_per_dim};
    sys->domain = options.omega_override.value_or(Box::cube(1, 2.0));
    ControlTerm g1;
    g1.g = [](double t, const Vec& x, const Vec& u) {
        return Vec{x[0] + u[0] * std::cos(kTwoPi * t)};
    };
    g1.entry_periods = {1.0};
    g1.bound = 3.0;  // |x| <= 2 on the default domain plus |u cos| <= 1
    g1.lipschitz = 1.0;
    ControlTerm g2;
    g2.g = [](double t, const Vec&, const Vec& u) { return Vec{u[0] * std::cos(2.0 * t)}; };
    g2.entry_periods = {kPi};
    g2.bound = 1.0;
    g2.lipschitz = 0.0;
    sys->terms = {std::move(g1), std::move(g2)};
    finalize_control_grid(*sys);

    const std::vector<double> Ms = sys->term_bounds();
    const std::vector<double> Ks = sys->term_lipschitz();
    const std::vector<double> periods = sys->distinct_periods();
    CatalogEntry entry{
        "example_5_5",
        "scalar control system x' = eps(x + u(cos 2 pi t + cos 2t)), U = [-1,1]",
        control_map(sys),
        sys,
        "control",
        [Ms, Ks, periods](double eps) { return control_bound(Ms, Ks, 2, eps, periods).value; },
        0.815,
        std::sqrt(20.0) * (1.0 + 1.5 * std::sqrt(2.0) * std::exp(std::sqrt(2.0))) *
            (1.0 + 1.0 / kPi),
        Vec{0.0}};
    return entry;
}

CatalogEntry make_example_4_7(const CatalogOptions& options) {
    auto sys = std::make_shared<ControlSystem>();
    sys->dimension = 2;
    sys->control_dim = 2;
    sys->control_box = Box{{0.0, 0.0}, {1.0, kTwoPi}};
    sys->control_counts = {options.control_points_per_dim, options.control_points_per_dim};
    sys->domain = options.omega_override.value_or(Box::cube(2, 12.0));
    ControlTerm g;
    g.g = [](double t, const Vec&, const Vec& u) {
        return Vec{7.0 * std::cos(t) + u[0] * std::cos(u[1]),
                   7.0 * std::sin(kPi * t) + u[0] * std::sin(u[1])};
    };
    g.entry_periods = {kTwoPi, 2.0};
    g.bound = 7.0 * std::sqrt(2.0) + 1.0;
    g.lipschitz = 0.0;
    sys->terms = {std::move(g)};
    finalize_control_grid(*sys);

    const std::vector<double> Ms = sys->term_bounds();
    const std::vector<double> Ks = sys->term_lipschitz();
    const std::vector<double> periods = sys->distinct_periods();
    CatalogEntry entry{
        "example_4_7",
        "planar control-induced map (7 cos t + u1 cos u2, 7 sin pi t + u1 sin u2), not a sum of "
        "its components",
        control_map(sys),
        sys,
        "control",
        [Ms, Ks, periods](double eps) { return control_bound(Ms, Ks, 1, eps, periods).value; },
        std::nullopt,
        std::nullopt,
        Vec{0.0, 0.0}};
    return entry;
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"scalar_cos", "example_4_7", "example_5_5", "rotating_2d"};
}

bool catalog_has(const std::string& name) {
    for (const std::string& n : catalog_names())
        if (n == name) return true;
    return false;
}

CatalogEntry catalog_entry(const std::string& name, const CatalogOptions& options) {
    if (name == "scalar_cos") return make_scalar_cos(options);
    if (name == "example_4_7") return make_example_4_7(options);
    if (name == "example_5_5") return make_example_5_5(options);
    if (name == "rotating_2d") return make_rotating_2d(options);
    throw ConfigError("unknown catalog system: " + name);
}

SetMap averaged_map(const CatalogEntry& entry, GridPtr grid, const AveragingSettings& settings) {
    if (entry.system)
        return averaged_control_map(entry.system, grid, settings.torus_nodes,
                                    settings.state_nodes);
    return average_periodic(entry.map, settings.quad_nodes);
}

}  // namespace incavg
