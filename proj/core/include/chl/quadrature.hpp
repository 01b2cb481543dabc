#pragma once

#include <functional>

namespace chl {

// adaptive Gauss-Kronrod on [a,b]; throws QuadratureFailure if the error
// estimate exceeds tol * max(1, |result|)
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

// fixed 16-point Gauss-Legendre on [a,b]; no error estimate
double gauss16(const std::function<double(double)>& f, double a, double b);

} // namespace chl
