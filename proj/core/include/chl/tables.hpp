#pragma once

#include <string>
#include <vector>

#include "chl/layer_ode.hpp"

namespace chl {

// published reference run: layout, time stamps, and displacement values
struct TableSpec {
    int id = 0;
    double eps = 0.0;
    std::vector<double> h0;
    double rho = 0.0, delta = 0.0;
    std::vector<double> taus;        // one run per tau (0 = classic)
    VelocityMode velocity = VelocityMode::forward;
    std::vector<double> times;
    std::vector<std::string> row_labels;
    // reference[row][column]; table 1: row = tau run, otherwise row = transition
    std::vector<std::vector<double>> reference;
};

const TableSpec& table_spec(int id);  // id in 1..4

// entry tolerance policy: entries >= 1e-5 in magnitude must match sign and 5%
// relative; smaller entries must match sign and order of magnitude
bool entry_check(double computed, double reference, double tol_scale, double* rel_err,
                 std::string* rule);

struct CheckRow {
    std::string label;
    double t = 0.0;
    double computed = 0.0, reference = 0.0, err = 0.0;
    bool pass = false;
    std::string rule;
};

struct TableReport {
    int id = 0;
    std::vector<CheckRow> rows;
    bool pass = false;
    // trajectories behind the report: one per tau run, sampled at spec.times
    std::vector<std::vector<std::vector<double>>> h_samples;  // [run][time][transition]
};

// integrate the table's runs and check every printed entry
TableReport reproduce_table(int id, double tol_scale = 1.0);

} // namespace chl
