#include "chl/banded.hpp"

#include <lapacke.h>

#include "chl/errors.hpp"
#include "chl/io.hpp"

namespace chl {

static_assert(sizeof(lapack_int) == sizeof(int), "pivot storage assumes 32-bit LAPACK indices");

namespace {
constexpr int kl = 2, ku = 2, ldab = 2 * kl + ku + 1;  // factor workspace rows
}

PentaSolver::PentaSolver(int n, const std::vector<double>& sub2, const std::vector<double>& sub1,
                         const std::vector<double>& diag, const std::vector<double>& sup1,
                         const std::vector<double>& sup2)
    : n_(n), ab_(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(n), 0.0),
      ipiv_(static_cast<std::size_t>(n), 0) {
    if (n < 3 || static_cast<int>(diag.size()) != n || static_cast<int>(sub1.size()) != n - 1 ||
        static_cast<int>(sup1.size()) != n - 1 || static_cast<int>(sub2.size()) != n - 2 ||
        static_cast<int>(sup2.size()) != n - 2)
        throw ValidationFailure("penta solver: inconsistent band lengths");

    auto at = [&](int i, int j) -> double& {
        return ab_[static_cast<std::size_t>(j) * ldab + static_cast<std::size_t>(kl + ku + i - j)];
    };
    for (int i = 0; i < n; ++i) at(i, i) = diag[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) {
        at(i + 1, i) = sub1[static_cast<std::size_t>(i)];
        at(i, i + 1) = sup1[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i + 2 < n; ++i) {
        at(i + 2, i) = sub2[static_cast<std::size_t>(i)];
        at(i, i + 2) = sup2[static_cast<std::size_t>(i)];
    }
    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl, ku, ab_.data(), ldab,
                                     ipiv_.data());
    if (info != 0)
        throw SolveFailure(strf("penta solver: band factorization failed (info=%d)",
                                static_cast<int>(info)));
}

void PentaSolver::solve(std::vector<double>& rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw ValidationFailure("penta solver: right-hand side length mismatch");
    lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl, ku, 1,
                                     const_cast<double*>(ab_.data()), ldab,
                                     const_cast<lapack_int*>(ipiv_.data()), rhs.data(), n_);
    if (info != 0)
        throw SolveFailure(strf("penta solver: band solve failed (info=%d)",
                                static_cast<int>(info)));
}

} // namespace chl
