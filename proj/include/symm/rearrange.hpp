#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symm/grid.hpp"

namespace symm {

// t -> |{ |u| > t }|, nonincreasing and right-continuous; the step convention
// is mu(t) = measures[i] for t in [levels[i], levels[i+1]).
struct DistributionCurve {
    std::vector<double> levels;
    std::vector<double> measures;

    double value(double t) const;
    void validate(double domain_measure) const;
};

// Sampled function on an interval, used for the decreasing rearrangement
// u*(s) on [0, |Omega|].
struct SampledCurve {
    std::vector<double> x;
    std::vector<double> y;
};

// Monotone nonincreasing radial profile w(r) on [0, R]; the induced field is
// x -> w(|x|) on the dim-ball of radius R.
struct RadialProfile {
    int dim = 2;
    std::vector<double> radius; // 0 = r_0 < ... < r_K = R
    std::vector<double> value;  // nonincreasing

    double outer_radius() const { return radius.empty() ? 0.0 : radius.back(); }
    double max_value() const { return value.empty() ? 0.0 : value.front(); }
    double boundary_value() const { return value.empty() ? 0.0 : value.back(); }
    double ball_measure() const;

    double operator()(double r) const;       // linear interpolation, clamped
    // Largest radius with w(r) > t (monotone inversion of the sampled data);
    // 0 when t >= max, R when t < boundary value.
    double radius_at_level(double t) const;
    // |{ w > t }| = omega_n * radius_at_level(t)^n
    double level_measure(double t) const;
    // integral of g(w) over the ball, n omega_n int g(w(r)) r^(n-1) dr on the
    // piecewise-linear profile (segment-exact radial weight).
    double integral(const std::function<double(double)>& g) const;
    double lp_norm(double p) const;
    // int |w'|^p over the ball from segment slopes.
    double dirichlet_energy(double p) const;

    void validate() const;
};

DistributionCurve distribution(const ScalarField& field, const std::vector<double>& levels);

// u*(s): descending sort of cell values, each carrying measure dx^2; ties are
// broken by cell index so the output is deterministic.
SampledCurve decreasing_rearrangement(const ScalarField& field, int samples);

RadialProfile schwarz(const ScalarField& field, int samples = 2048);

// Rebuild a 2-D field from a radial profile (used for idempotence checks and
// for comparing radial solutions on grids).
ScalarField profile_to_field(const RadialProfile& profile, double dx);

// int g(|v|) dx by cell sum; its contract is that the same integral over the
// schwarz output (profile_integral) agrees within discretization tolerance.
double rearranged_integral(const ScalarField& field, const std::function<double(double)>& g);
double profile_integral(const RadialProfile& profile, const std::function<double(double)>& g);

struct PolyaSzegoResult {
    double lhs = 0.0; // int |grad u|^p, forward differences, zero extension
    double rhs = 0.0; // int |grad u#|^p from the radial profile
    bool holds = false;
    double tol = 0.0;
};

// Direction check for the symmetrization energy inequality. The optional
// window restricts both sides to the level band {t1 < v < t2}.
PolyaSzegoResult polya_szego_check(const ScalarField& field, double p,
                                   std::optional<std::pair<double, double>> window = {},
                                   int samples = 2048);

// Discrete Dirichlet p-energy of the zero-extended field (forward differences).
double grid_dirichlet_energy(const ScalarField& field, double p);

} // namespace symm
