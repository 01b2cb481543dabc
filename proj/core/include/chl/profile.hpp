#pragma once

#include <vector>

#include "chl/field.hpp"
#include "chl/potential.hpp"
#include "chl/standing_wave.hpp"

namespace chl {

// scale parameters shared by the profile and reduced-dynamics layers
struct ProfileParams {
    double eps = 0.0;
    double rho = 0.0;    // admissible region: every gap length > eps/rho
    double delta = 0.0;  // formal small scale; validation only

    void validate(int transitions) const;  // 0 < delta < eps/rho < 1/(transitions)
};

// ordered transition points 0 < h_1 < ... < h_K < 1 with reflection ghosts
class LayerVector {
public:
    static LayerVector checked(std::vector<double> h);    // throws ValidationFailure
    static LayerVector unchecked(std::vector<double> h);  // hot paths; caller guarantees order

    int transitions() const { return static_cast<int>(h_.size()); }
    double operator[](int j) const { return h_[static_cast<std::size_t>(j)]; }  // 0-based
    const std::vector<double>& raw() const { return h_; }

    // [-h_1, h_1, ..., h_K, 2-h_K]
    std::vector<double> padded() const;
    // K+1 gap lengths between consecutive padded positions
    std::vector<double> gap_lengths() const;
    double min_gap() const;
    bool in_omega(double eps, double rho) const;

private:
    explicit LayerVector(std::vector<double> h) : h_(std::move(h)) {}
    std::vector<double> h_;
};

// interaction scales of a single gap: alpha = F(m), beta = 1 - |m|
struct AlphaBeta {
    double alpha;
    double beta;
};

enum class AlphaMode { asymptotic, exact };

// r = eps/ell; sign picks the well branch (+1: gap on the +1 phase).
// asymptotic: alpha = K^2 A^2 exp(-A/r)/2, beta = K exp(-A/(2r)); requires r < 0.2.
// exact: resolves the standing wave; requires 1/r >= 4.
AlphaBeta alpha_beta(double r, int sign, AlphaMode mode, const Potential& pot);

// multi-layer profile: standing waves per gap glued with a C^inf ramp chi
// of width eps centered at each transition. Waves are cached per LayerVector.
class ProfileBuilder {
public:
    ProfileBuilder(const LayerVector& h, const Potential& pot, double eps);

    double value(double x) const;  // x in [0,1]
    const StandingWave& wave(int gap) const { return waves_[static_cast<std::size_t>(gap)]; }

private:
    std::vector<double> centers_, knots_;
    std::vector<StandingWave> waves_;
    double eps_;
};

// sampled profile on the uniform n-grid; throws DomainError outside the
// admissible region
Field build_uh(const LayerVector& h, const ProfileParams& p, const Potential& pot, int n);

// integral of the profile over [0,1] (composite Simpson, resolution tied to eps)
double mass(const LayerVector& h, const ProfileParams& p, const Potential& pot);

// stationarity defect -eps^2 u_xx + F'(u) of a sampled field (reflection ends)
struct ResidualReport {
    Field r;
    double sup;
    double l2;
};
ResidualReport ac_residual(const Field& u, const Potential& pot, double eps);

// sum over consecutive gap pairs of (alpha_{j+1} - alpha_j)^2, asymptotic branches
double barrier_psi(const LayerVector& h, const ProfileParams& p, const Potential& pot);

// recover the last transition from the leading K-1 and a mass target;
// bracketed inside the admissible region intersected with wave existence
double solve_hN1(const std::vector<double>& xi, double mass_target,
                 const ProfileParams& p, const Potential& pot);

} // namespace chl
