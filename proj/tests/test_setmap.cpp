#include <cmath>

#include "doctest.h"
#include "incavg/catalog.hpp"
#include "incavg/rng.hpp"
#include "incavg/setmap.hpp"

using namespace incavg;

namespace {

const double kPi = 3.14159265358979323846;
const double kTwoPi = 2.0 * kPi;

SetMap interval_map(std::function<std::pair<double, double>(double)> lo_hi, double period,
                    double bound) {
    SetMap::Spec spec;
    spec.dimension = 1;
    spec.bound = bound;
    spec.lipschitz = 0.0;
    spec.periods = {period};
    spec.structure = Structure::sum_of_periodic;
    spec.domain = Box::cube(1, 4.0);
    auto f = std::make_shared<decltype(lo_hi)>(std::move(lo_hi));
    spec.support = [f](double t, const Vec&, const Vec& ell) {
        const auto [lo, hi] = (*f)(t);
        return ell[0] > 0 ? ell[0] * hi : ell[0] * lo;
    };
    return SetMap(std::move(spec));
}

SetMap cos_singleton() {
    return catalog_entry("scalar_cos").map;
}

}  // namespace

TEST_CASE("eval basics") {
    auto g1 = DirectionGrid::make(1);
    auto F = cos_singleton();
    auto s = eval(F, 0.0, {0.0}, g1);
    CHECK(s.value(0) == doctest::Approx(1.0));
    CHECK(s.value(1) == doctest::Approx(-1.0));

    // F(t,x) = B(x,1)
    SetMap::Spec spec;
    spec.dimension = 2;
    spec.bound = 4.0;
    spec.lipschitz = 1.0;
    spec.domain = Box::cube(2, 3.0);
    spec.support = [](double, const Vec& x, const Vec& ell) { return dot(ell, x) + 1.0; };
    SetMap ballmap(std::move(spec));
    auto g2 = DirectionGrid::make(2, 64);
    auto b = eval(ballmap, 5.0, {1.0, -0.5}, g2);
    CHECK(hausdorff(b, ball({1.0, -0.5}, 1.0, g2)) == doctest::Approx(0.0));
}

TEST_CASE("eval of the non-decomposable planar map at t=0") {
    auto entry = catalog_entry("example_4_7", {41, std::nullopt});
    auto g2 = DirectionGrid::make(2, 64);
    auto s = eval(entry.map, 0.0, {0.0, 0.0}, g2);
    // independent oracle: max over a sampled U grid, plus the closed form 7 l1 + 1
    SplitMix64 rng(7);
    for (int k = 0; k < 16; ++k) {
        Vec ell = rng.unit_vector(2);
        double want = -1e300;
        for (const Vec& u : entry.system->control_grid) {
            const Vec p{7.0 + u[0] * std::cos(u[1]), u[0] * std::sin(u[1])};
            want = std::max(want, dot(ell, p));
        }
        const double got = entry.map.support(0.0, {0.0, 0.0}, ell);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
        CHECK(std::fabs(got - (7.0 * ell[0] + 1.0)) < 5e-3);  // control-grid resolution
    }
    // grid eval matches the scalar oracle on grid directions
    for (int i = 0; i < g2->size(); ++i)
        CHECK(s.value(i) ==
              doctest::Approx(entry.map.support(0.0, {0.0, 0.0}, g2->directions[i])));
}

TEST_CASE("sum_of_periodic") {
    auto g1 = DirectionGrid::make(1);
    auto a = cos_singleton();
    SetMap::Spec bspec;
    bspec.dimension = 1;
    bspec.bound = 1.0;
    bspec.periods = {kPi};
    bspec.structure = Structure::sum_of_periodic;
    bspec.domain = Box::cube(1, 2.0);
    bspec.support = [](double t, const Vec&, const Vec& ell) {
        return ell[0] * std::cos(2.0 * t);
    };
    SetMap b(std::move(bspec));
    auto sum = sum_of_periodic({a, b});
    CHECK(sum.periods().size() == 2);
    CHECK(sum.bound() == doctest::Approx(2.0));
    for (double t : {0.0, 0.3, 1.7})
        CHECK(sum.support(t, {0.0}, {1.0}) ==
              doctest::Approx(std::cos(kTwoPi * t) + std::cos(2.0 * t)));

    auto g2 = DirectionGrid::make(2, 32);
    SetMap::Spec c1;
    c1.dimension = 2;
    c1.bound = 1.0;
    c1.periods = {1.0};
    c1.domain = Box::cube(2, 3.0);
    c1.support = [](double, const Vec&, const Vec&) { return 1.0; };  // B(0,1)
    SetMap::Spec c2 = c1;
    c2.bound = 2.0;
    c2.support = [](double, const Vec&, const Vec&) { return 2.0; };  // B(0,2)
    auto s3 = sum_of_periodic({SetMap(std::move(c1)), SetMap(std::move(c2))});
    CHECK(hausdorff(eval(s3, 0.0, {0.0, 0.0}, g2), ball({0.0, 0.0}, 3.0, g2)) ==
          doctest::Approx(0.0));

    // interval maps add on support values
    auto i1 = interval_map(
        [](double t) { return std::make_pair(0.0, 1.0 + std::sin(kTwoPi * t)); }, 1.0, 2.0);
    auto i2 = interval_map(
        [](double t) { return std::make_pair(0.0, 1.0 + std::sin(2.0 * t)); }, kPi, 2.0);
    auto is = sum_of_periodic({i1, i2});
    for (double t : {0.0, 0.4, 2.0}) {
        CHECK(is.support(t, {0.0}, {1.0}) ==
              doctest::Approx(2.0 + std::sin(kTwoPi * t) + std::sin(2.0 * t)));
        CHECK(is.support(t, {0.0}, {-1.0}) == doctest::Approx(0.0));
    }
}

TEST_CASE("control_map") {
    // g = u on U=[-1,1]
    ControlSystem sys;
    sys.dimension = 1;
    sys.control_dim = 1;
    sys.control_box = Box{{-1.0}, {1.0}};
    sys.control_counts = {101};
    sys.domain = Box::cube(1, 2.0);
    ControlTerm term;
    term.g = [](double, const Vec&, const Vec& u) { return Vec{u[0]}; };
    term.entry_periods = {1.0};
    term.bound = 1.0;
    term.lipschitz = 0.0;
    sys.terms = {term};
    finalize_control_grid(sys);
    auto map = control_map(sys);
    CHECK(map.support(0.3, {0.0}, {1.0}) == doctest::Approx(1.0));
    CHECK(map.support(0.3, {0.0}, {-1.0}) == doctest::Approx(1.0));
    CHECK(map.control_grid_error() <= 1e-12);  // affine in u: extremes are on the grid

    // example 5.5: h(+1)(t,x) = x + |cos 2 pi t + cos 2t|
    auto entry = catalog_entry("example_5_5");
    SplitMix64 rng(11);
    for (int k = 0; k < 32; ++k) {
        const double t = rng.uniform(0.0, 8.0);
        const double x = rng.uniform(-1.5, 1.5);
        const double c = std::cos(kTwoPi * t) + std::cos(2.0 * t);
        double oracle = -1e300;  // independent 1-D max over the control grid
        for (const Vec& u : entry.system->control_grid) oracle = std::max(oracle, x + u[0] * c);
        const double got = entry.map.support(t, {x}, {1.0});
        CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(got == doctest::Approx(x + std::fabs(c)));
    }

    // example 4.7 at t = 1/4: h((0,1)) = 7 sin(pi/4) + 1
    auto e47 = catalog_entry("example_4_7", {101, std::nullopt});
    CHECK(e47.map.support(0.25, {0.0, 0.0}, {0.0, 1.0}) ==
          doctest::Approx(7.0 * std::sin(kPi / 4.0) + 1.0).epsilon(1e-3));

    ControlSystem no_control = sys;
    no_control.control_grid.clear();
    no_control.control_counts.clear();
    no_control.control_box = Box{{}, {}};
    no_control.control_dim = 0;
    no_control.terms[0].g = [](double, const Vec&, const Vec&) { return Vec{0.25}; };
    no_control.terms[0].bound = 0.25;
    finalize_control_grid(no_control);  // U collapses to a single empty control
    CHECK(control_map(no_control).support(0.0, {0.0}, {1.0}) == doctest::Approx(0.25));
}

TEST_CASE("partial_average") {
    auto F = cos_singleton();
    auto g1 = DirectionGrid::make(1);

    // full-period average collapses to {0}
    auto full = partial_average(F, 1.0, 64);
    for (double t : {0.0, 0.37, 2.9}) {
        CHECK(std::fabs(full.support(t, {0.0}, {1.0})) < 1e-10);
        CHECK(std::fabs(full.support(t, {0.0}, {-1.0})) < 1e-10);
    }

    // half-period window: closed form -(2/pi) sin(2 pi t)
    auto half = partial_average(F, 0.5, 8192);
    for (double t : {0.0, 0.21, 1.13})
        CHECK(std::fabs(half.support(t, {0.0}, {1.0}) - (-(2.0 / kPi) * std::sin(kTwoPi * t))) <
              1e-8);

    // constant map is a fixed point for any window
    SetMap::Spec cs;
    cs.dimension = 2;
    cs.bound = 1.0;
    cs.domain = Box::cube(2, 2.0);
    cs.autonomous = true;
    cs.support = [](double, const Vec&, const Vec&) { return 1.0; };
    SetMap constant(std::move(cs));
    auto g2 = DirectionGrid::make(2, 32);
    auto avg = partial_average(constant, 2.7, 16);
    CHECK(hausdorff(eval(avg, 1.0, {0.0, 0.0}, g2), ball({0.0, 0.0}, 1.0, g2)) ==
          doctest::Approx(0.0));

    CHECK_THROWS_AS(partial_average(F, 0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(partial_average(F, -1.0, 16), std::invalid_argument);
}

TEST_CASE("periodic collapse of the window average") {
    auto F = cos_singleton();
    auto g1 = DirectionGrid::make(1);
    auto FT = partial_average(F, 1.0, 256);
    const auto ref = eval(FT, 0.0, {0.0}, g1);
    for (double t : {0.1, 0.5, 1.9, 7.3})
        CHECK(hausdorff(eval(FT, t, {0.0}, g1), ref) < 1e-12);
}

TEST_CASE("nested window averages commute") {
    auto F = cos_singleton();
    auto a = partial_average(partial_average(F, 1.0, 128), kPi, 128);
    auto b = partial_average(partial_average(F, kPi, 128), 1.0, 128);
    SplitMix64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const double t = rng.uniform(0.0, 5.0);
        const double va = a.support(t, {0.0}, {1.0});
        const double vb = b.support(t, {0.0}, {1.0});
        CHECK(std::fabs(va - vb) < 1e-10);
    }
}

TEST_CASE("window average is non-expansive") {
    auto F = cos_singleton();
    auto G = interval_map(
        [](double t) { return std::make_pair(-0.25, 0.5 + 0.5 * std::cos(kTwoPi * t)); }, 1.0,
        1.0);
    auto g1 = DirectionGrid::make(1);
    const double T = 0.7;
    auto FT = partial_average(F, T, 512);
    auto GT = partial_average(G, T, 512);
    SplitMix64 rng(17);
    for (int k = 0; k < 10; ++k) {
        const double t = rng.uniform(0.0, 3.0);
        double sup = 0.0;
        for (int s = 0; s < 2000; ++s) {
            const double ts = t + T * (s + 0.5) / 2000.0;
            sup = std::max(sup, hausdorff(eval(F, ts, {0.0}, g1), eval(G, ts, {0.0}, g1)));
        }
        CHECK(hausdorff(eval(FT, t, {0.0}, g1), eval(GT, t, {0.0}, g1)) <= sup + 1e-9);
    }
}

TEST_CASE("control support dominates every fixed control") {
    auto entry = catalog_entry("example_5_5");
    SplitMix64 rng(23);
    for (int k = 0; k < 64; ++k) {
        const double t = rng.uniform(0.0, 6.0);
        const Vec x{rng.uniform(-1.5, 1.5)};
        const Vec ell{rng.uniform() < 0.5 ? -1.0 : 1.0};
        const double h = entry.map.support(t, x, ell);
        const auto& grid = entry.system->control_grid;
        const Vec& u = grid[rng.next() % grid.size()];
        CHECK(dot(ell, entry.system->g_sum(t, x, u)) <= h + 1e-12);
    }
}

TEST_CASE("metadata honesty by sampling") {
    for (const std::string& name : catalog_names()) {
        CatalogOptions opt;
        opt.control_points_per_dim = 21;
        auto entry = catalog_entry(name, opt);
        CHECK_NOTHROW(validate_setmap(entry.map, 10000, 99));
        if (entry.system) CHECK_NOTHROW(validate_control_system(*entry.system, 2000, 99));
    }
}

TEST_CASE("domain guard") {
    auto entry = catalog_entry("scalar_cos");
    CHECK_THROWS_AS(entry.map.support(0.0, {5.0}, {1.0}), NumericError);
}
