#include <cmath>

#include "doctest.h"
#include "incavg/bounds.hpp"
#include "incavg/catalog.hpp"
#include "incavg/convex.hpp"
#include "incavg/rng.hpp"

using namespace incavg;

namespace {
const double kPi = 3.14159265358979323846;
const double kE = 2.718281828459045;
}  // namespace

TEST_CASE("key lemma bound") {
    CHECK(key_lemma_bound(1.0, 0.0, 2.0, 0.1) == doctest::Approx(0.2));
    // 1 + 1.5 e = 5.077422742688568
    CHECK(key_lemma_bound(1.0, 1.0, 1.0, 1.0) == doctest::Approx(5.077422742688568));
    CHECK(key_lemma_bound(0.0, 3.0, 7.0, 0.5) == 0.0);
    CHECK_THROWS_AS(key_lemma_bound(-1.0, 0.0, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("gauge bound") {
    // periodic wiring Delta = eps*T, eta = 0 reproduces the key-lemma value
    const double M = 1.3, K = 0.7, T = 2.5, eps = 0.05;
    CHECK(gauge_bound(M, K, eps * T, 0.0) == doctest::Approx(key_lemma_bound(M, K, T, eps)));
    CHECK(gauge_bound(1.0, 0.0, 0.1, 0.05) == doctest::Approx(0.15));
    // Delta = sqrt(delta), eta = 2 sqrt(delta): the square-root-modulus wiring
    const double delta = 0.04;
    CHECK(gauge_bound(1.0, 0.5, std::sqrt(delta), 2.0 * std::sqrt(delta)) ==
          doctest::Approx((1.0 + 0.75 * std::exp(0.5)) * 0.2 + std::exp(0.5) * 0.4));
    CHECK_THROWS_AS(gauge_bound(1.0, 0.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("additivity bound") {
    CHECK(additivity_bound(1.0, 0.5, {{0.3, 0.01}}) ==
          doctest::Approx(gauge_bound(1.0, 0.5, 0.3, 0.01)));
    const double eps = 0.1;
    CHECK(additivity_bound(2.0, 0.0, {{eps * 1.0, 0.0}, {eps * 2.0, 0.0}}) ==
          doctest::Approx(eps * 2.0 * (1.0 + 2.0)));
    // direct evaluation: (1+1.5e)(0.3) + e*0.03 = 1.6047752776603417
    CHECK(additivity_bound(1.0, 1.0, {{0.1, 0.01}, {0.2, 0.02}}) ==
          doctest::Approx(1.6047752776603417));
    CHECK_THROWS_AS(additivity_bound(1.0, 0.0, {}), std::invalid_argument);
}

TEST_CASE("componentwise bound") {
    // all eta zero: coincides with the additive form
    CHECK(componentwise_bound(1.5, 0.25, {{0.1, 0.0}, {0.4, 0.0}}) ==
          doctest::Approx(additivity_bound(1.5, 0.25, {{0.1, 0.0}, {0.4, 0.0}})));
    // 3-4-5 with vanishing windows and K=0
    CHECK(componentwise_bound(1.0, 0.0, {{1e-12, 3.0}, {1e-12, 4.0}}) == doctest::Approx(5.0));
    // direct evaluation: (1+1.5e)*0.2 + e*0.1*sqrt(2) = 1.3999076513536253
    CHECK(componentwise_bound(1.0, 1.0, {{0.1, 0.1}, {0.1, 0.1}}) ==
          doctest::Approx(1.3999076513536253));
}

TEST_CASE("control bound") {
    // worked scalar control system: M=(3,1), K=(1,0), m=2, periods {1, pi}
    auto report = control_bound({3.0, 1.0}, {1.0, 0.0}, 2, 1.0, {1.0, kPi},
                                1.0 + 1.0 / kPi);
    CHECK(report.inputs["M_H"].get<double>() == doctest::Approx(std::sqrt(10.0)));
    CHECK(report.inputs["K_H"].get<double>() == doctest::Approx(std::sqrt(2.0)));
    CHECK(report.value == doctest::Approx(180.1338316096089));
    CHECK(report.variants["paper_printed"].get<double>() == doctest::Approx(57.338379437504734));
    CHECK(report.variants["formula_derived"].get<double>() == doctest::Approx(report.value));

    // m=1 reduces to the single-frequency form
    auto single = control_bound({2.0}, {0.5}, 1, 0.1, {3.0});
    CHECK(single.value == doctest::Approx(0.1 * 2.0 * (1.0 + 0.75 * std::exp(0.5)) * 3.0));

    // duplicate periods deduplicate before summing
    auto dup = control_bound({1.0, 1.0}, {0.0, 0.0}, 2, 1.0, {1.0, 1.0});
    CHECK(dup.value == doctest::Approx(2.0));  // sqrt(2)*sqrt(2)*1*1

    CHECK_THROWS_AS(control_bound({}, {}, 0, 0.1, {1.0}), std::invalid_argument);
}

TEST_CASE("bound report serializes") {
    auto report = control_bound({3.0, 1.0}, {1.0, 0.0}, 2, 0.1, {1.0, kPi});
    auto j = report.to_json();
    CHECK(j["formula_id"] == "control");
    CHECK(j["value"].get<double>() == doctest::Approx(18.01338316096089));
    CHECK(j["inputs"]["period_sum"].get<double>() == doctest::Approx(1.0 + kPi));
}

TEST_CASE("bounds are monotone in every input") {
    SplitMix64 rng(2718);
    for (int k = 0; k < 200; ++k) {
        const double M = rng.uniform(0.0, 3.0), K = rng.uniform(0.0, 2.0);
        const double T = rng.uniform(0.1, 5.0), eps = rng.uniform(0.01, 0.5);
        const double bump = rng.uniform(0.0, 1.0);
        CHECK(key_lemma_bound(M + bump, K, T, eps) >= key_lemma_bound(M, K, T, eps));
        CHECK(key_lemma_bound(M, K + bump, T, eps) >= key_lemma_bound(M, K, T, eps));
        CHECK(key_lemma_bound(M, K, T + bump, eps) >= key_lemma_bound(M, K, T, eps));
        CHECK(key_lemma_bound(M, K, T, eps + bump) >= key_lemma_bound(M, K, T, eps));
        const double d1 = rng.uniform(0.01, 1.0), e1 = rng.uniform(0.0, 1.0);
        CHECK(gauge_bound(M, K, d1 + bump, e1) >= gauge_bound(M, K, d1, e1));
        CHECK(gauge_bound(M, K, d1, e1 + bump) >= gauge_bound(M, K, d1, e1));
        CHECK(componentwise_bound(M, K, {{d1, e1 + bump}, {d1, e1}}) >=
              componentwise_bound(M, K, {{d1, e1}, {d1, e1}}));
    }
}

TEST_CASE("formula consistency at Delta = eps*T") {
    SplitMix64 rng(99);
    for (int k = 0; k < 100; ++k) {
        const double M = rng.uniform(0.1, 3.0), K = rng.uniform(0.0, 2.0);
        const double T = rng.uniform(0.1, 4.0), eps = rng.uniform(0.01, 0.3);
        const double eta = rng.uniform(0.0, 0.5);
        const double lhs = additivity_bound(M, K, {{eps * T, eta}});
        const double rhs = key_lemma_bound(M, K, T, eps) + std::exp(K) * eta;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        CHECK(lhs == doctest::Approx(gauge_bound(M, K, eps * T, eta)).epsilon(1e-12));
    }
}

TEST_CASE("convex-set subtraction inequality") {
    auto grid = DirectionGrid::make(2, 128);
    auto grid1 = DirectionGrid::make(1);
    SplitMix64 rng(314);
    int polygon_trials = 0;
    for (int k = 0; k < 200; ++k) {
        if (k % 2 == 0) {
            // intervals
            auto mk = [&rng, &grid1]() {
                const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
                return from_points({Vec{std::min(a, b)}, Vec{std::max(a, b)}}, grid1);
            };
            auto D1 = mk(), D2 = mk(), E1 = mk(), E2 = mk();
            CHECK(hausdorff(D2, E2) <=
                  hausdorff(minkowski_sum(D1, D2), minkowski_sum(E1, E2)) + hausdorff(D1, E1) +
                      1e-12);
        } else {
            auto mk = [&rng, &grid]() {
                std::vector<Vec> pts;
                const int n = 3 + static_cast<int>(rng.next() % 5);
                for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
                return from_points(pts, grid);
            };
            auto D1 = mk(), D2 = mk(), E1 = mk(), E2 = mk();
            CHECK(hausdorff(D2, E2) <=
                  hausdorff(minkowski_sum(D1, D2), minkowski_sum(E1, E2)) + hausdorff(D1, E1) +
                      1e-12);
            ++polygon_trials;
        }
    }
    CHECK(polygon_trials == 100);
}

TEST_CASE("estimate constants") {
    // constant unit ball
    SetMap::Spec spec;
    spec.dimension = 2;
    spec.bound = 1.0;
    spec.lipschitz = 0.0;
    spec.domain = Box::cube(2, 2.0);
    spec.autonomous = true;
    spec.support = [](double, const Vec&, const Vec&) { return 1.0; };
    SetMap b01(std::move(spec));
    auto est = estimate_constants(b01, Box::cube(2, 2.0), 2000, 7);
    CHECK(est.bound_raw == doctest::Approx(1.0));
    CHECK(est.bound == doctest::Approx(1.05));
    CHECK(est.lipschitz_raw == doctest::Approx(0.0));
    CHECK(!est.metadata_violated);

    // identity map F(t,x) = {x} on [-2,2]
    SetMap::Spec id;
    id.dimension = 1;
    id.bound = 2.0;
    id.lipschitz = 1.0;
    id.domain = Box::cube(1, 2.0);
    id.autonomous = true;
    id.support = [](double, const Vec& x, const Vec& ell) { return ell[0] * x[0]; };
    SetMap idmap(std::move(id));
    auto est1 = estimate_constants(idmap, Box::cube(1, 2.0), 4000, 11);
    CHECK(est1.bound_raw == doctest::Approx(2.0).epsilon(0.01));
    CHECK(est1.lipschitz_raw == doctest::Approx(1.0).epsilon(0.01));
    CHECK(!est1.metadata_violated);

    // per-term estimates for the worked control system converge to (3,1),(1,0)
    auto entry = catalog_entry("example_5_5");
    auto terms = estimate_term_constants(*entry.system, 20000, 13);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].bound_raw == doctest::Approx(3.0).epsilon(0.05));
    CHECK(terms[0].bound >= 3.0 * 0.99);  // margin covers the sampling deficit
    CHECK(terms[0].lipschitz_raw == doctest::Approx(1.0).epsilon(0.02));
    CHECK(terms[1].bound_raw == doctest::Approx(1.0).epsilon(0.02));
    CHECK(terms[1].lipschitz_raw == doctest::Approx(0.0));
    CHECK(!terms[0].metadata_violated);
    CHECK(!terms[1].metadata_violated);

    // a lying declaration is flagged
    SetMap::Spec liar = 		[]{
        SetMap::Spec s;
        s.dimension = 1;
        s.bound = 0.5;  // true bound is 1
        s.lipschitz = 0.0;
        s.domain = Box::cube(1, 1.0);
        s.autonomous = true;
        s.support = [](double, const Vec&, const Vec&) { return 1.0; };
        return s;
    }();
    auto est2 = estimate_constants(SetMap(std::move(liar)), Box::cube(1, 1.0), 500, 3);
    CHECK(est2.metadata_violated);
}

TEST_CASE("control constants") {
    auto c = control_constants({3.0, 1.0}, {1.0, 0.0}, 2);
    CHECK(c.M_H == doctest::Approx(std::sqrt(10.0)));
    CHECK(c.K_H == doctest::Approx(std::sqrt(2.0)));
    CHECK(dedupe_periods({1.0, 1.0 + 1e-15, kPi}).size() == 2);
}
