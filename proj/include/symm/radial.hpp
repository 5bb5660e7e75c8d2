#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symm/operators.hpp"
#include "symm/rearrange.hpp"

namespace symm::radial {

enum class ShotStatus {
    Terminated,   // reached w = 0 at radius R_h
    CapExceeded,  // still positive at the a-priori radius cap (hypothesis violation when f(0) > 0)
    NotTerminated // positive at the user cap with f(0) = 0 (legitimate)
};

// One shooting trajectory of the radial problem in flux form:
//   Phi(r) = r^(n-1) b(w, -w'),  Phi' = r^(n-1) f(w),  w' = -invert_b(w, Phi/r^(n-1))
struct RadialShot {
    double height = 0.0;       // w(0) = h
    double step = 0.0;
    RadialProfile profile;     // (r, w) samples, includes the terminal point
    std::vector<double> neg_slope; // -w' at the samples
    std::vector<double> flux;      // Phi at the samples
    ShotStatus status = ShotStatus::Terminated;
    double radius = 0.0;       // R_h when terminated
    double flux_residual = 0.0;
};

struct IntegrateOptions {
    double r_cap = 0.0;        // 0: use 1.5x the a-priori bound (requires f(0) > 0)
    int record_stride = 1;     // keep every k-th sample
};

RadialShot integrate(const OperatorSpec& op, const SourceSpec& src, double h, double step,
                     const IntegrateOptions& opts = {});

// max over sample radii of |n omega_n Phi(R) - int_{B_R} f(w) dx| relative to
// the integral (trapezoid on the sample lattice); the radial divergence identity.
double flux_identity_residual(const RadialShot& shot, const OperatorSpec& op,
                              const SourceSpec& src);

// Shooting correspondence Psi = (Psi1, Psi2); requires f(0) > 0 so every shot
// terminates.
double psi1(const OperatorSpec& op, const SourceSpec& src, double h, double step = 1e-3);
RadialProfile psi2(const OperatorSpec& op, const SourceSpec& src, double h, double step = 1e-3);

// A-priori bound on the vanishing radius:
//   C = (n C^* / f(0)) [1 + (p/(p-1) * h f(0) / (n C^*))^((p-1)/p)]
double r_upper_bound(const OperatorSpec& op, const SourceSpec& src, double h);

// Theta_M: inverse of R -> int_0^R rho^{-1}(f(0) r / n) dr with
// rho(s) = sup_{t in [0,M]} b(t, s). Continuous, increasing, Theta_M(0) = 0,
// and R_h <= Theta_M(h) for h <= M.
class ThetaBound {
public:
    ThetaBound(const OperatorSpec& op, const SourceSpec& src, double M);
    double operator()(double h) const; // Theta_M(h)
    double forward(double R) const;    // G(R) = int_0^R rho^{-1}(f(0) r / n) dr
    double h_max() const { return h_max_; }

private:
    std::vector<double> r_nodes_, integrand_, cumulative_;
    double h_max_ = 0.0;
};

ThetaBound theta_bound(const OperatorSpec& op, const SourceSpec& src, double M);

struct ScanOptions {
    double step = 0.0;          // 0: R0/1500
    double h_cap = 0.0;         // 0: sup-estimate cap from the bounds chain (dim 2)
    double h_floor = 0.0;       // 0: derived from the Theta forward map
    int points_per_decade = 64;
    double root_rel_tol = 1e-12;
};

struct MaximalResult {
    double height = 0.0;        // h0 = max{h : Psi1(h) = R0}
    RadialProfile profile;      // Psi2(h0)
    std::vector<double> roots;  // every root found by the scan, ascending
    double h_cap = 0.0;
    double step = 0.0;
};

// Scans h on a geometric lattice, bisects every sign change of Psi1(h) - R0,
// and returns the largest root. Throws std::runtime_error("no solution at this
// radius ...") when no crossing exists below the cap.
MaximalResult maximal_solution(const OperatorSpec& op, const SourceSpec& src, double R0,
                               const ScanOptions& opts = {});
double maximal_height(const OperatorSpec& op, const SourceSpec& src, double R0,
                      const ScanOptions& opts = {});

enum class FZeroStatus { Zero, Nontrivial, Resonance, NoConvergence };

struct FZeroResult {
    RadialProfile profile;  // limit profile (zero profile when heights vanish)
    FZeroStatus status = FZeroStatus::Zero;
    int iterations = 0;
    std::vector<double> heights; // heights of the shifted maximal solutions
};

// Maximal solution for f with f(0) = 0 via the shifted sources f(. + 2^-k),
// k <= 40, detected by a sup-norm Cauchy criterion.
FZeroResult f_zero_maximal(const OperatorSpec& op, const SourceSpec& src, double R0,
                           const ScanOptions& opts = {});

void save_shot_csv(const RadialShot& shot, const std::string& path);

} // namespace symm::radial
