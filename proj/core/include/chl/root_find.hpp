#pragma once

#include <functional>

namespace chl {

// bracketed root of f on [a,b]; throws NoRoot when f(a), f(b) do not straddle zero.
// tol_bits: binary digits of agreement required between bracket ends.
double find_root(const std::function<double(double)>& f, double a, double b,
                 int tol_bits = 50);

} // namespace chl
