#include "symm/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "symm/util.hpp"

namespace symm {

double DistributionCurve::value(double t) const {
    if (levels.empty()) return 0.0;
    if (t < levels.front()) return measures.front();
    auto it = std::upper_bound(levels.begin(), levels.end(), t);
    return measures[static_cast<std::size_t>(it - levels.begin()) - 1];
}

void DistributionCurve::validate(double domain_measure) const {
    if (levels.size() != measures.size()) throw std::invalid_argument("curve size mismatch");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] <= levels[i - 1]) throw std::invalid_argument("levels not increasing");
        if (measures[i] > measures[i - 1]) throw std::invalid_argument("measures not nonincreasing");
    }
    if (!measures.empty() && measures.front() > domain_measure + 1e-12)
        throw std::invalid_argument("measure exceeds domain measure");
}

double RadialProfile::ball_measure() const {
    double R = outer_radius();
    return unit_ball_volume(dim) * std::pow(R, dim);
}

double RadialProfile::operator()(double r) const {
    return interp_linear(radius, value, r);
}

double RadialProfile::radius_at_level(double t) const {
    if (value.empty()) return 0.0;
    if (t >= value.front()) return 0.0;
    if (t < value.back()) return radius.back();
    // value is nonincreasing; find the last sample with w > t
    std::size_t lo = 0, hi = value.size() - 1;
    while (lo + 1 < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (value[mid] > t) lo = mid; else hi = mid;
    }
    // interpolate inside the crossing segment [lo, hi]
    double w0 = value[lo], w1 = value[hi];
    if (w0 <= w1) return radius[lo];
    double f = (w0 - t) / (w0 - w1);
    return radius[lo] + f * (radius[hi] - radius[lo]);
}

double RadialProfile::level_measure(double t) const {
    double r = radius_at_level(t);
    return unit_ball_volume(dim) * std::pow(r, dim);
}

double RadialProfile::integral(const std::function<double(double)>& g) const {
    // segment-exact radial measure, symmetric 2-point evaluation of g(w);
    // exact for constant g, O(h^2) otherwise
    const double omega = unit_ball_volume(dim);
    const double c = 0.5 / std::sqrt(3.0);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < radius.size(); ++k) {
        double wa = value[k], wb = value[k + 1];
        double seg = omega * (std::pow(radius[k + 1], dim) - std::pow(radius[k], dim));
        acc += 0.5 * seg * (g(wa + (0.5 - c) * (wb - wa)) + g(wa + (0.5 + c) * (wb - wa)));
    }
    return acc;
}

double RadialProfile::lp_norm(double p) const {
    return std::pow(integral([p](double w) { return std::pow(std::abs(w), p); }), 1.0 / p);
}

double RadialProfile::dirichlet_energy(double p) const {
    const double omega = unit_ball_volume(dim);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < radius.size(); ++k) {
        double h = radius[k + 1] - radius[k];
        if (h <= 0.0) continue;
        double slope = (value[k + 1] - value[k]) / h;
        acc += std::pow(std::abs(slope), p) * omega *
               (std::pow(radius[k + 1], dim) - std::pow(radius[k], dim));
    }
    return acc;
}

void RadialProfile::validate() const {
    if (radius.size() != value.size() || radius.size() < 2)
        throw std::invalid_argument("profile: need >= 2 samples");
    if (radius.front() != 0.0) throw std::invalid_argument("profile: first radius must be 0");
    if (radius.back() <= 0.0) throw std::invalid_argument("profile: R must be positive");
    for (std::size_t i = 1; i < radius.size(); ++i) {
        if (radius[i] <= radius[i - 1]) throw std::invalid_argument("profile: radii not increasing");
        if (value[i] > value[i - 1] + 1e-12)
            throw std::invalid_argument("profile: values not nonincreasing");
    }
}

DistributionCurve distribution(const ScalarField& field, const std::vector<double>& levels) {
    field.validate();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0.0) throw std::invalid_argument("levels must be nonnegative");
        if (i && levels[i] <= levels[i - 1]) throw std::invalid_argument("levels must be ascending");
    }
    const double cell = field.dx * field.dx;
    DistributionCurve curve;
    curve.levels = levels;
    curve.measures.reserve(levels.size());
    // strict inequality |u| > t, matching the definition of the distribution function
    std::vector<double> vals;
    vals.reserve(field.cell_count());
    for (std::size_t k = 0; k < field.mask.size(); ++k)
        if (field.mask[k]) vals.push_back(std::abs(field.values[k]));
    std::sort(vals.begin(), vals.end());
    for (double t : levels) {
        auto it = std::upper_bound(vals.begin(), vals.end(), t);
        curve.measures.push_back(static_cast<double>(vals.end() - it) * cell);
    }
    return curve;
}

namespace {

// Masked |values| sorted descending with index tiebreak.
std::vector<double> sorted_descending(const ScalarField& field) {
    std::vector<std::pair<double, std::size_t>> tagged;
    tagged.reserve(field.cell_count());
    for (std::size_t k = 0; k < field.mask.size(); ++k)
        if (field.mask[k]) tagged.emplace_back(std::abs(field.values[k]), k);
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<double> out;
    out.reserve(tagged.size());
    for (auto& [v, k] : tagged) out.push_back(v);
    return out;
}

// u*(s) as a step function: sorted cell i occupies measure [i*cell, (i+1)*cell).
double ustar_at(const std::vector<double>& sorted, double cell, double s) {
    if (s <= 0.0) return sorted.front();
    auto idx = static_cast<std::size_t>(s / cell);
    if (idx >= sorted.size()) idx = sorted.size() - 1;
    return sorted[idx];
}

} // namespace

SampledCurve decreasing_rearrangement(const ScalarField& field, int samples) {
    field.validate();
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    auto sorted = sorted_descending(field);
    const double cell = field.dx * field.dx;
    const double total = static_cast<double>(sorted.size()) * cell;
    SampledCurve out;
    out.x.resize(samples);
    out.y.resize(samples);
    for (int i = 0; i < samples; ++i) {
        double s = total * i / (samples - 1);
        out.x[i] = s;
        out.y[i] = ustar_at(sorted, cell, s);
    }
    out.y.back() = sorted.back();
    return out;
}

RadialProfile schwarz(const ScalarField& field, int samples) {
    field.validate();
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    auto sorted = sorted_descending(field);
    const double cell = field.dx * field.dx;
    const double total = static_cast<double>(sorted.size()) * cell;
    RadialProfile prof;
    prof.dim = 2;
    const double omega = unit_ball_volume(prof.dim);
    const double R = std::pow(total / omega, 1.0 / prof.dim);
    prof.radius.resize(samples);
    prof.value.resize(samples);
    double prev = sorted.front();
    for (int i = 0; i < samples; ++i) {
        double r = R * i / (samples - 1);
        prof.radius[i] = r;
        double w = ustar_at(sorted, cell, omega * std::pow(r, prof.dim));
        w = std::min(w, prev); // guard monotonicity against float noise in the radius map
        prof.value[i] = w;
        prev = w;
    }
    prof.value.back() = std::min(prev, sorted.back());
    return prof;
}

ScalarField profile_to_field(const RadialProfile& profile, double dx) {
    double R = profile.outer_radius();
    ScalarField f = make_disk(R, dx);
    fill(f, [&profile](double x, double y) { return profile(std::hypot(x, y)); });
    return f;
}

double rearranged_integral(const ScalarField& field, const std::function<double(double)>& g) {
    field.validate();
    return field.integral([&g](double v) { return g(std::abs(v)); });
}

double profile_integral(const RadialProfile& profile, const std::function<double(double)>& g) {
    return profile.integral(g);
}

double grid_dirichlet_energy(const ScalarField& field, double p) {
    // forward differences with zero extension: every cell of the enlarged box
    // whose stencil touches the mask contributes
    double acc = 0.0;
    const double inv = 1.0 / field.dx;
    for (int j = -1; j <= field.ny; ++j) {
        for (int i = -1; i <= field.nx; ++i) {
            double v = field.at(i, j);
            double gx = (field.at(i + 1, j) - v) * inv;
            double gy = (field.at(i, j + 1) - v) * inv;
            double g2 = gx * gx + gy * gy;
            if (g2 > 0.0) acc += std::pow(g2, 0.5 * p);
        }
    }
    return acc * field.dx * field.dx;
}

namespace {

double grid_dirichlet_energy_window(const ScalarField& field, double p, double t1, double t2) {
    double acc = 0.0;
    const double inv = 1.0 / field.dx;
    for (int j = -1; j <= field.ny; ++j) {
        for (int i = -1; i <= field.nx; ++i) {
            double v = field.at(i, j);
            if (!(v > t1 && v < t2)) continue;
            double gx = (field.at(i + 1, j) - v) * inv;
            double gy = (field.at(i, j + 1) - v) * inv;
            double g2 = gx * gx + gy * gy;
            if (g2 > 0.0) acc += std::pow(g2, 0.5 * p);
        }
    }
    return acc * field.dx * field.dx;
}

double profile_dirichlet_energy_window(const RadialProfile& prof, double p, double t1, double t2) {
    const double omega = unit_ball_volume(prof.dim);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < prof.radius.size(); ++k) {
        double wmid = 0.5 * (prof.value[k] + prof.value[k + 1]);
        if (!(wmid > t1 && wmid < t2)) continue;
        double h = prof.radius[k + 1] - prof.radius[k];
        if (h <= 0.0) continue;
        double slope = (prof.value[k + 1] - prof.value[k]) / h;
        acc += std::pow(std::abs(slope), p) * omega *
               (std::pow(prof.radius[k + 1], prof.dim) - std::pow(prof.radius[k], prof.dim));
    }
    return acc;
}

} // namespace

PolyaSzegoResult polya_szego_check(const ScalarField& field, double p,
                                   std::optional<std::pair<double, double>> window,
                                   int samples) {
    if (p <= 1.0) throw std::invalid_argument("polya_szego_check: p must be > 1");
    field.validate();
    RadialProfile prof = schwarz(field, samples);
    PolyaSzegoResult res;
    if (window) {
        auto [t1, t2] = *window;
        res.lhs = grid_dirichlet_energy_window(field, p, t1, t2);
        res.rhs = profile_dirichlet_energy_window(prof, p, t1, t2);
    } else {
        res.lhs = grid_dirichlet_energy(field, p);
        res.rhs = prof.dirichlet_energy(p);
    }
    // both sides carry O(dx) discretization error; scale the slack accordingly
    res.tol = 0.05 * res.lhs + 5.0 * field.dx * std::max(1.0, res.lhs);
    res.holds = res.rhs <= res.lhs + res.tol;
    return res;
}

} // namespace symm
