#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incavg/setmap.hpp"
#include "json.hpp"

namespace incavg {

// eps * M * T * (1 + 1.5 K e^K)
double key_lemma_bound(double M, double K, double T, double eps);

// M (1 + 1.5 K e^K) Delta + e^K eta
double gauge_bound(double M, double K, double delta, double eta);

// M (1 + 1.5 K e^K) sum Delta_j + e^K sum eta_j
double additivity_bound(double M, double K, const std::vector<std::pair<double, double>>& delta_eta);

// M (1 + 1.5 K e^K) sum Delta_j + e^K sqrt(sum eta_j^2)
double componentwise_bound(double M, double K,
                           const std::vector<std::pair<double, double>>& delta_eta);

struct ControlConstants {
    double M_H = 0.0;  // sqrt(sum M_j^2)
    double K_H = 0.0;  // sqrt(m * sum K_j^2)
};
ControlConstants control_constants(const std::vector<double>& term_bounds,
                                   const std::vector<double>& term_lipschitz, int m);

std::vector<double> dedupe_periods(std::vector<double> periods, double tol = 1e-12);

/// Evaluated bound formula with the constants that produced it.
struct BoundReport {
    std::string formula_id;
    nlohmann::json inputs;
    double value = 0.0;
    std::vector<std::string> notes;
    nlohmann::json variants;  // named alternative evaluations, when any

    nlohmann::json to_json() const;
};

// eps * sqrt(m) * M_H (1 + 1.5 K_H e^{K_H}) * sum of deduplicated periods.
// `paper_period_factor`, when given, adds a second "paper-printed" evaluation
// with that factor in place of the deduplicated period sum.
BoundReport control_bound(const std::vector<double>& term_bounds,
                          const std::vector<double>& term_lipschitz, int m, double eps,
                          const std::vector<double>& periods,
                          std::optional<double> paper_period_factor = std::nullopt);

struct ConstantsEstimate {
    double bound_raw = 0.0;      // sampled supremum of |h|
    double bound = 0.0;          // padded by the safety margin
    double lipschitz_raw = 0.0;  // sampled supremum difference quotient
    double lipschitz = 0.0;
    bool metadata_violated = false;
    double margin = 0.05;
};

// sampled (M, K) with a safety margin; flags declared metadata violations
ConstantsEstimate estimate_constants(const SetMap& map, const Box& omega, int sample_count,
                                     std::uint64_t seed, double margin = 0.05);

// per-term (M_j, K_j) estimates for a control system
std::vector<ConstantsEstimate> estimate_term_constants(const ControlSystem& sys, int sample_count,
                                                       std::uint64_t seed, double margin = 0.05);

}  // namespace incavg
