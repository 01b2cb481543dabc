#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chl/config.hpp"
#include "chl/tables.hpp"

namespace chl {

// side-by-side run of the full equation and the reduced flow on one config
struct CompareReport {
    std::vector<double> times;
    std::vector<std::vector<double>> h_pde, h_ode;  // [sample][transition]
    double sup_gap = 0.0;      // tracked observable: first transition, sup over samples
    double sup_gap_all = 0.0;  // max over every transition (crossing-shape drift included)
    bool signs_ok = true;
    double band = 0.0;
    double mass_drift = 0.0;               // after the full run
    std::vector<double> ratio;             // scaled profile-distance per sample
    std::vector<bool> ratio_valid;
    long pde_steps = 0;
};

CompareReport compare_pde_ode(const Config& cfg);

// named built-in configurations (table1..table4, compare-desk, sweep-default, pde-desk)
Config builtin_config(const std::string& name);
std::vector<std::string> builtin_config_names();

// file-writing entry points used by the command line tool; all throw
// ToleranceFailure when a configured acceptance band is missed
std::string run_ode(const Config& cfg, const std::filesystem::path& out);
std::string run_pde(const Config& cfg, const std::filesystem::path& out);
std::string run_compare(const Config& cfg, const std::filesystem::path& out,
                        double tol_override = 0.0);
std::string run_reproduce_table(int id, const std::filesystem::path& out,
                                double tol_override = 0.0);
std::string run_sweep(const Config& cfg, const std::filesystem::path& out);

} // namespace chl
