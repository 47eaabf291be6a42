#include "incavg/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "incavg/rng.hpp"

namespace incavg {

namespace {

void require_nonneg(double v, const char* what) {
    if (v < 0 || !std::isfinite(v)) throw std::invalid_argument(std::string("negative ") + what);
}

double growth_factor(double K) { return 1.0 + 1.5 * K * std::exp(K); }

}  // namespace

double key_lemma_bound(double M, double K, double T, double eps) {
    require_nonneg(M, "M");
    require_nonneg(K, "K");
    require_nonneg(T, "T");
    require_nonneg(eps, "eps");
    return eps * M * T * growth_factor(K);
}

double gauge_bound(double M, double K, double delta, double eta) {
    require_nonneg(M, "M");
    require_nonneg(K, "K");
    require_nonneg(eta, "eta");
    if (!(delta > 0)) throw std::invalid_argument("window gauge Delta must be positive");
    return M * growth_factor(K) * delta + std::exp(K) * eta;
}

double additivity_bound(double M, double K,
                        const std::vector<std::pair<double, double>>& delta_eta) {
    require_nonneg(M, "M");
    require_nonneg(K, "K");
    if (delta_eta.empty()) throw std::invalid_argument("empty gauge list");
    double sum_delta = 0.0, sum_eta = 0.0;
    for (const auto& [delta, eta] : delta_eta) {
        if (!(delta > 0)) throw std::invalid_argument("window gauge Delta must be positive");
        require_nonneg(eta, "eta");
        sum_delta += delta;
        sum_eta += eta;
    }
    return M * growth_factor(K) * sum_delta + std::exp(K) * sum_eta;
}

double componentwise_bound(double M, double K,
                           const std::vector<std::pair<double, double>>& delta_eta) {
    require_nonneg(M, "M");
    require_nonneg(K, "K");
    if (delta_eta.empty()) throw std::invalid_argument("empty gauge list");
    double sum_delta = 0.0, sum_eta_sq = 0.0;
    for (const auto& [delta, eta] : delta_eta) {
        if (!(delta > 0)) throw std::invalid_argument("window gauge Delta must be positive");
        require_nonneg(eta, "eta");
        sum_delta += delta;
        sum_eta_sq += eta * eta;
    }
    return M * growth_factor(K) * sum_delta + std::exp(K) * std::sqrt(sum_eta_sq);
}

ControlConstants control_constants(const std::vector<double>& term_bounds,
                                   const std::vector<double>& term_lipschitz, int m) {
    if (term_bounds.empty() || term_lipschitz.empty())
        throw std::invalid_argument("empty constant lists");
    if (static_cast<int>(term_bounds.size()) != m ||
        static_cast<int>(term_lipschitz.size()) != m)
        throw std::invalid_argument("constant list length does not match m");
    double msq = 0.0, ksq = 0.0;
    for (double v : term_bounds) {
        require_nonneg(v, "M_j");
        msq += v * v;
    }
    for (double v : term_lipschitz) {
        require_nonneg(v, "K_j");
        ksq += v * v;
    }
    return ControlConstants{std::sqrt(msq), std::sqrt(m * ksq)};
}

std::vector<double> dedupe_periods(std::vector<double> periods, double tol) {
    std::sort(periods.begin(), periods.end());
    std::vector<double> out;
    for (double T : periods) {
        if (!(T > 0)) throw std::invalid_argument("periods must be positive");
        if (out.empty() || std::fabs(T - out.back()) > tol) out.push_back(T);
    }
    return out;
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["formula_id"] = formula_id;
    j["inputs"] = inputs;
    j["value"] = value;
    j["notes"] = notes;
    if (!variants.is_null()) j["variants"] = variants;
    return j;
}

BoundReport control_bound(const std::vector<double>& term_bounds,
                          const std::vector<double>& term_lipschitz, int m, double eps,
                          const std::vector<double>& periods,
                          std::optional<double> paper_period_factor) {
    require_nonneg(eps, "eps");
    const ControlConstants c = control_constants(term_bounds, term_lipschitz, m);
    const std::vector<double> distinct = dedupe_periods(periods);
    if (distinct.empty()) throw std::invalid_argument("empty period set");
    double period_sum = 0.0;
    for (double T : distinct) period_sum += T;
    const double factor = eps * std::sqrt(static_cast<double>(m)) * c.M_H * growth_factor(c.K_H);

    BoundReport report;
    report.formula_id = "control";
    report.inputs = {{"M", term_bounds},        {"K", term_lipschitz},
                     {"m", m},                  {"eps", eps},
                     {"periods", periods},      {"distinct_periods", distinct},
                     {"period_sum", period_sum}, {"M_H", c.M_H},
                     {"K_H", c.K_H}};
    report.value = factor * period_sum;
    report.variants["formula_derived"] = report.value;
    report.notes.push_back("formula-derived: period factor " + std::to_string(period_sum));
    if (paper_period_factor) {
        report.variants["paper_printed"] = factor * *paper_period_factor;
        report.notes.push_back("paper-printed: period factor " +
                               std::to_string(*paper_period_factor));
    }
    return report;
}

ConstantsEstimate estimate_constants(const SetMap& map, const Box& omega, int sample_count,
                                     std::uint64_t seed, double margin) {
    if (sample_count < 2) throw std::invalid_argument("need at least two samples");
    SplitMix64 rng(seed);
    const double t_span = 10.0 * map.max_period(1.0);
    ConstantsEstimate est;
    est.margin = margin;
    for (int s = 0; s < sample_count; ++s) {
        const double t = rng.uniform(0.0, t_span);
        const Vec x1 = rng.point_in_box(omega);
        const Vec x2 = rng.point_in_box(omega);
        const Vec ell = rng.unit_vector(map.dimension());
        const double h1 = map.support(t, x1, ell);
        const double h2 = map.support(t, x2, ell);
        if (!std::isfinite(h1) || !std::isfinite(h2))
            throw NumericError("sampling found non-finite support values");
        est.bound_raw = std::max(est.bound_raw, std::fabs(h1));
        const double gap = distance(x1, x2);
        if (gap > 1e-9)
            est.lipschitz_raw = std::max(est.lipschitz_raw, std::fabs(h1 - h2) / gap);
    }
    est.bound = est.bound_raw * (1.0 + margin);
    est.lipschitz = est.lipschitz_raw * (1.0 + margin);
    est.metadata_violated = est.bound_raw > map.bound() + 1e-9 ||
                            est.lipschitz_raw > map.lipschitz() + 1e-9;
    return est;
}

std::vector<ConstantsEstimate> estimate_term_constants(const ControlSystem& sys, int sample_count,
                                                       std::uint64_t seed, double margin) {
    if (sample_count < 2) throw std::invalid_argument("need at least two samples");
    std::vector<ConstantsEstimate> out(sys.terms.size());
    for (std::size_t j = 0; j < sys.terms.size(); ++j) {
        SplitMix64 rng(derive_seed(seed, j));
        const ControlTerm& term = sys.terms[j];
        double t_span = 0.0;
        for (double T : term.entry_periods) t_span = std::max(t_span, T);
        t_span = 10.0 * (t_span > 0 ? t_span : 1.0);
        ConstantsEstimate est;
        est.margin = margin;
        for (int s = 0; s < sample_count; ++s) {
            const double t = rng.uniform(0.0, t_span);
            const Vec x1 = rng.point_in_box(sys.domain);
            const Vec x2 = rng.point_in_box(sys.domain);
            const Vec& u = sys.control_grid[rng.next() % sys.control_grid.size()];
            const Vec g1 = term.g(t, x1, u);
            const Vec g2 = term.g(t, x2, u);
            if (!all_finite(g1) || !all_finite(g2))
                throw NumericError("sampling found non-finite term values");
            est.bound_raw = std::max(est.bound_raw, norm(g1));
            const double gap = distance(x1, x2);
            if (gap > 1e-9) {
                Vec diff(g1.size());
                for (std::size_t i = 0; i < g1.size(); ++i) diff[i] = g1[i] - g2[i];
                est.lipschitz_raw = std::max(est.lipschitz_raw, norm(diff) / gap);
            }
        }
        est.bound = est.bound_raw * (1.0 + margin);
        est.lipschitz = est.lipschitz_raw * (1.0 + margin);
        est.metadata_violated = est.bound_raw > term.bound + 1e-9 ||
                                est.lipschitz_raw > term.lipschitz + 1e-9;
        out[j] = est;
    }
    return out;
}

}  // namespace incavg
