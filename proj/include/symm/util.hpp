#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symm {

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
    // omega_n = pi^(n/2) / Gamma(n/2 + 1)
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Bisection for a continuous monotone-increasing g on [lo, hi] with g(lo) <= y <= g(hi).
// Returns x with |g(x) - y| driven to relative tolerance on the bracket width.
inline double bisect_increasing(const std::function<double(double)>& g, double y,
                                double lo, double hi, double rel_tol = 1e-12,
                                int max_iter = 200) {
    double flo = g(lo) - y;
    double fhi = g(hi) - y;
    if (flo > 0.0 && fhi > 0.0) return lo;
    if (flo < 0.0 && fhi < 0.0) return hi;
    for (int i = 0; i < max_iter && (hi - lo) > rel_tol * (std::abs(hi) + 1e-300); ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = g(mid) - y;
        if (fm < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Piecewise-linear interpolation on a sorted abscissa table. Clamped at the ends.
inline double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("interp_linear: bad table");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

// Monotone (Fritsch-Carlson) cubic interpolant. Preserves monotonicity of the data,
// which is what the radius/level inversions need; accuracy beyond that is incidental.
class MonotoneInterp {
public:
    MonotoneInterp() = default;
    MonotoneInterp(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneInterp: need >= 2 points");
        slopes_.assign(n, 0.0);
        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double hx = x_[i + 1] - x_[i];
            if (hx <= 0.0) throw std::invalid_argument("MonotoneInterp: abscissae not increasing");
            d[i] = (y_[i + 1] - y_[i]) / hx;
        }
        slopes_[0] = d[0];
        slopes_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i)
            slopes_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (d[i] == 0.0) { slopes_[i] = slopes_[i + 1] = 0.0; continue; }
            double a = slopes_[i] / d[i], b = slopes_[i + 1] / d[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double t = 3.0 / std::sqrt(s);
                slopes_[i] = t * a * d[i];
                slopes_[i + 1] = t * b * d[i];
            }
        }
    }

    double operator()(double x) const {
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        double h = x_[i + 1] - x_[i];
        double t = (x - x_[i]) / h;
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        double h10 = t * (1 - t) * (1 - t);
        double h01 = t * t * (3 - 2 * t);
        double h11 = t * t * (t - 1);
        return h00 * y_[i] + h10 * h * slopes_[i] + h01 * y_[i + 1] + h11 * h * slopes_[i + 1];
    }

    double min_x() const { return x_.front(); }
    double max_x() const { return x_.back(); }

private:
    std::vector<double> x_, y_, slopes_;
};

// Composite Simpson on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 64) {
    if (panels < 2) panels = 2;
    if (panels % 2) ++panels;
    double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Deterministic CSV writer: fixed %.17g formatting so identical inputs give
// byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }
    void header(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i)
            out_ << (i ? "," : "") << names[i];
        out_ << '\n';
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            out_ << (i ? "," : "") << format_double(vals[i]);
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace symm
