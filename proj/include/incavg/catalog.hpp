#pragma once

#include <functional>
#include <optional>
#include <string>

#include "incavg/averaging.hpp"
#include "incavg/setmap.hpp"

namespace incavg {

struct CatalogOptions {
    int control_points_per_dim = 101;
    std::optional<Box> omega_override;
};

/// Named builtin system addressable from the CLI and the scenario files.
struct CatalogEntry {
    std::string name;
    std::string description;
    SetMap map;
    std::shared_ptr<const ControlSystem> system;  // null for plain set maps
    std::string bound_formula;
    std::function<double(double)> theoretical_bound;  // eps -> bound
    std::optional<double> paper_alpha;                // printed radius, when one exists
    std::optional<double> paper_bound_factor;         // printed bound/eps variant
    Vec default_x0;
};

std::vector<std::string> catalog_names();
bool catalog_has(const std::string& name);
CatalogEntry catalog_entry(const std::string& name, const CatalogOptions& options = {});

struct AveragingSettings {
    int quad_nodes = 256;
    int torus_nodes = 128;
    int state_nodes = 33;
};

// The matching autonomous averaged map: chattering average for control
// systems, per-period time average otherwise.
SetMap averaged_map(const CatalogEntry& entry, GridPtr grid, const AveragingSettings& settings);

}  // namespace incavg
