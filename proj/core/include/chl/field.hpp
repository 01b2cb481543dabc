#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace chl {

// scalar field sampled on the uniform grid x_i = i/n, i = 0..n
struct Field {
    int n = 0;
    std::vector<double> v;

    Field() = default;
    explicit Field(int n_) : n(n_), v(static_cast<std::size_t>(n_) + 1, 0.0) {}

    double dx() const { return 1.0 / n; }
    double x(int i) const { return static_cast<double>(i) / n; }
    int size() const { return n + 1; }
    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

    double trapezoid() const {
        double s = 0.5 * (v.front() + v.back());
        for (int i = 1; i < n; ++i) s += v[static_cast<std::size_t>(i)];
        return s * dx();
    }
    double sup_abs() const {
        double m = 0.0;
        for (double y : v) {
            double a = y < 0 ? -y : y;
            if (a > m) m = a;
        }
        return m;
    }
};

// trapezoid rule over [0,1]; the weights sum to exactly 1
inline double trapezoid(const Field& f) { return f.trapezoid(); }

inline double sup_abs(const Field& f) { return f.sup_abs(); }

} // namespace chl
