#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "incavg/convex.hpp"

namespace incavg {

enum class Structure { generic, sum_of_periodic, componentwise_periodic, control_induced };

std::string to_string(Structure s);

struct ControlSystem;

using SupportFn = std::function<double(double, const Vec&, const Vec&)>;
using SupportAllFn = std::function<std::vector<double>(double, const Vec&, const DirectionGrid&)>;

/// Time-varying set-valued mapping F(t,x) as a support-function oracle with
/// metadata: norm bound M, Lipschitz constant K in x, declared periods of its
/// components, structure tag and state domain. Values are immutable after
/// construction and safe to share across threads.
class SetMap {
  public:
    struct Spec {
        int dimension = 0;
        double bound = 0.0;      // M: |F(t,x)| <= M
        double lipschitz = 0.0;  // K: d_H(F(t,x1),F(t,x2)) <= K|x1-x2|
        std::vector<double> periods;
        Structure structure = Structure::generic;
        Box domain;
        bool autonomous = false;
        double control_grid_error = 0.0;
        SupportFn support;
        SupportAllFn support_all;  // optional batch path
        std::shared_ptr<const ControlSystem> origin;       // set for control-induced maps
        std::shared_ptr<const std::vector<SetMap>> terms;  // set for sum-of-periodic maps
    };

    explicit SetMap(Spec spec);

    int dimension() const { return spec_.dimension; }
    double bound() const { return spec_.bound; }
    double lipschitz() const { return spec_.lipschitz; }
    const std::vector<double>& periods() const { return spec_.periods; }
    Structure structure() const { return spec_.structure; }
    const Box& domain() const { return spec_.domain; }
    bool autonomous() const { return spec_.autonomous; }
    double control_grid_error() const { return spec_.control_grid_error; }
    const std::shared_ptr<const ControlSystem>& origin() const { return spec_.origin; }
    const std::shared_ptr<const std::vector<SetMap>>& terms() const { return spec_.terms; }

    // h_F(t,x,ell); checks the domain and rejects non-finite results.
    double support(double t, const Vec& x, const Vec& ell) const;

    // support values for every grid direction; uses the batch oracle if present
    std::vector<double> support_all(double t, const Vec& x, const DirectionGrid& grid) const;

    // largest declared period, or fallback when aperiodic
    double max_period(double fallback = 1.0) const;

  private:
    Spec spec_;
};

ConvexSet eval(const SetMap& map, double t, const Vec& x, GridPtr grid);

// support of the Minkowski sum of periodic terms; M and K add, the period
// list collects every term period
SetMap sum_of_periodic(std::vector<SetMap> terms);

// F_T(t,x) = (1/T) integral_0^T F(t+s,x) ds via composite midpoint quadrature
// on support values; M, K, periods and structure are inherited
SetMap partial_average(const SetMap& map, double T, int quad_nodes = 256);

/// Control system x' = eps * sum_j g_j(t,x,u), u in U, with U discretized by
/// a finite tensor grid over an axis-aligned box.
struct ControlTerm {
    std::function<Vec(double, const Vec&, const Vec&)> g;
    std::vector<double> entry_periods;  // size 1 (uniform) or size d (per entry)
    double bound = 0.0;      // M_j
    double lipschitz = 0.0;  // K_j
};

struct ControlSystem {
    int dimension = 0;
    int control_dim = 0;
    Box control_box;                  // ranges of U
    std::vector<int> control_counts;  // grid points per control axis
    std::vector<Vec> control_grid;    // materialized samples of U
    std::vector<ControlTerm> terms;
    Box domain;

    Vec g_sum(double t, const Vec& x, const Vec& u) const;
    std::vector<double> term_bounds() const;
    std::vector<double> term_lipschitz() const;
    double bound_sum() const;
    double lipschitz_sum() const;
    // every entry period of every term, deduplicated with tolerance
    std::vector<double> distinct_periods(double tol = 1e-12) const;
    // representative period of term j (max over its entries)
    double term_period(int j) const;
};

std::vector<Vec> tensor_grid(const Box& box, const std::vector<int>& counts);

// finalize a system: materialize the control grid from box/counts if empty
void finalize_control_grid(ControlSystem& sys);

// support oracle h(t,x,l) = max over grid u of l . sum_j g_j(t,x,u); the grid
// discretization error is estimated by refining the grid (2n-1 points per
// axis) on sampled arguments and recorded on the returned map
SetMap control_map(const ControlSystem& sys);
SetMap control_map(std::shared_ptr<const ControlSystem> sys);

// sampled validation of declared metadata (M, K, periodicity); throws
// NumericError on violation beyond tolerance
void validate_setmap(const SetMap& map, int samples, std::uint64_t seed, double tol = 1e-7);
void validate_control_system(const ControlSystem& sys, int samples, std::uint64_t seed,
                             double tol = 1e-7);

}  // namespace incavg
