#pragma once

#include <vector>

namespace chl {

// LU-factored pentadiagonal system (two bands each side), LAPACK band storage
class PentaSolver {
public:
    // diagonals by offset: sub2/sub1 below, sup1/sup2 above (shorter by 1, 2)
    PentaSolver(int n, const std::vector<double>& sub2, const std::vector<double>& sub1,
                const std::vector<double>& diag, const std::vector<double>& sup1,
                const std::vector<double>& sup2);

    void solve(std::vector<double>& rhs) const;  // in place

private:
    int n_;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

} // namespace chl
