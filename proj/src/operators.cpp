#include "symm/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "symm/util.hpp"
#include <json.hpp>

namespace symm {

double WeightSpec::operator()(double t) const {
    switch (kind) {
        case Kind::Constant: return h0;
        case Kind::Affine: return h0 + h1 * t;
        case Kind::Saturating: return h0 + h1 * t / (1.0 + t);
    }
    return h0;
}

double WeightSpec::deriv(double t) const {
    switch (kind) {
        case Kind::Constant: return 0.0;
        case Kind::Affine: return h1;
        case Kind::Saturating: return h1 / ((1.0 + t) * (1.0 + t));
    }
    return 0.0;
}

double WeightSpec::inf_on(double t_lo, double t_hi) const {
    // all built-in weights are monotone in t, the infimum sits at an endpoint
    return std::min((*this)(t_lo), (*this)(t_hi));
}

double OperatorSpec::b(double t, double s) const {
    if (s <= 0.0) return 0.0;
    const double tt = t + t_shift;
    switch (family) {
        case Family::Power:
            return std::pow(s, p - 1.0);
        case Family::Weighted:
            return weight(tt) * std::pow(s, p - 1.0);
        case Family::TwoRegime:
            return c_small * std::pow(s, q0 - 1.0) * std::pow(1.0 + s * s, 0.5 * (q - q0));
    }
    return 0.0;
}

double OperatorSpec::e(double t, double s) const {
    const double s_safe = std::max(s, 1e-300);
    return b(t, s_safe) / s_safe;
}

double OperatorSpec::db_ds(double t, double s) const {
    const double tt = t + t_shift;
    switch (family) {
        case Family::Power:
            return (p - 1.0) * std::pow(s, p - 2.0);
        case Family::Weighted:
            return weight(tt) * (p - 1.0) * std::pow(s, p - 2.0);
        case Family::TwoRegime: {
            double core = std::pow(s, q0 - 2.0) * std::pow(1.0 + s * s, 0.5 * (q - q0) - 1.0);
            return c_small * core * ((q0 - 1.0) * (1.0 + s * s) + (q - q0) * s * s);
        }
    }
    return 0.0;
}

double OperatorSpec::invert_b(double t, double y) const {
    if (y <= 0.0) return 0.0;
    if (family == Family::Power)
        return std::pow(y, 1.0 / (p - 1.0));
    if (family == Family::Weighted) {
        double w = weight(t + t_shift);
        if (w <= 0.0) throw std::invalid_argument("operator weight not positive");
        return std::pow(y / w, 1.0 / (p - 1.0));
    }
    double hi = 1.0;
    int guard = 0;
    while (b(t, hi) < y) {
        hi *= 2.0;
        if (++guard > 120) throw std::invalid_argument("invert_b: no bracket, e not coercive");
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-13 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        double bm = b(t, mid);
        if (!(bm >= 0.0)) throw std::invalid_argument("invert_b: e not evaluable");
        if (bm < y) {
            if (bm < b(t, lo) - 1e-14 * y)
                throw std::invalid_argument("invert_b: s*e(t,s) not monotone");
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

OperatorSpec OperatorSpec::shifted(double t0) const {
    OperatorSpec out = *this;
    out.t_shift += t0;
    return out;
}

std::string OperatorSpec::family_name() const {
    switch (family) {
        case Family::Power: return "power";
        case Family::Weighted: return "weighted";
        case Family::TwoRegime: return "two_regime";
    }
    return "?";
}

void OperatorSpec::validate() const {
    if (dim < 1) throw std::invalid_argument("(H) dim must be >= 1");
    if (!(p >= q && q > 1.0)) throw std::invalid_argument("(H4) requires p >= q > 1");
    if (!(q0 > 1.0)) throw std::invalid_argument("(H4) requires q0 > 1");
    if (!(c_small > 0.0 && c_low > 0.0 && c_up > 0.0))
        throw std::invalid_argument("(H4) constants must be positive");
    if (!(mu_h6 >= 0.0 && mu_h6 < 2.0)) throw std::invalid_argument("(H6) mu must be in [0,2)");

    const std::vector<double> ts = {-1.0, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0};
    // monotonicity of s -> b(t,s) on a geometric lattice
    for (double t : ts) {
        double prev = 0.0;
        for (double s = 1e-6; s <= 1e3; s *= 1.3) {
            double bb = b(t, s);
            if (!(bb > prev)) throw std::invalid_argument("(H3) s*e(t,s) not strictly increasing");
            prev = bb;
        }
    }
    // growth sandwich
    for (double t : ts) {
        for (double s = 1e-6; s <= 1.0; s *= 1.5) {
            if (c_small * std::pow(s, q0) > s * b(t, s) * (1.0 + 1e-9))
                throw std::invalid_argument("(H4) lower bound near 0 violated");
        }
        for (double s = 1.0; s <= 100.0; s *= 1.5) {
            double sb = s * b(t, s);
            if (c_low * std::pow(s, q) > sb * (1.0 + 1e-9))
                throw std::invalid_argument("(H4) lower bound at infinity violated");
            if (sb > c_up * (std::pow(s, p) + std::pow(std::abs(t), p) + 1.0) * (1.0 + 1e-9))
                throw std::invalid_argument("(H4) upper bound violated");
        }
    }
    // (H6) on small s
    for (double t : {0.0, 1.0, 5.0}) {
        for (double s = 1e-8; s <= 1e-2; s *= 4.0) {
            if (db_ds(t, s) + 1e-12 < std::pow(b(t, s), mu_h6))
                throw std::invalid_argument("(H6) violated at small s");
        }
    }
}

OperatorSpec OperatorSpec::p_laplacian(double p, int dim) {
    OperatorSpec op;
    op.family = Family::Power;
    op.dim = dim;
    op.p = op.q = op.q0 = p;
    op.c_small = op.c_low = op.c_up = 1.0;
    op.mu_h6 = std::max(0.0, (p - 2.0) / (p - 1.0));
    return op;
}

OperatorSpec OperatorSpec::weighted_p_laplacian(double p, WeightSpec w, int dim) {
    OperatorSpec op;
    op.family = Family::Weighted;
    op.dim = dim;
    op.p = op.q = op.q0 = p;
    op.weight = w;
    // sampled lattice extends to t = 10, s = 100; the constants below make the
    // sandwich hold there
    double h_min = std::min({w(-1.0), w(0.0), w(10.0)});
    double h_max = std::max({w(-1.0), w(0.0), w(10.0)});
    if (h_min <= 0.0) throw std::invalid_argument("weight must be positive");
    op.c_small = op.c_low = h_min;
    op.c_up = h_max;
    op.mu_h6 = std::max(0.0, (p - 2.0) / (p - 1.0));
    return op;
}

OperatorSpec OperatorSpec::two_regime(double q0, double q, double c_small, int dim) {
    OperatorSpec op;
    op.family = Family::TwoRegime;
    op.dim = dim;
    op.q0 = q0;
    op.q = q;
    op.p = std::max(q, q0);
    op.c_small = c_small;
    double half = 0.5 * (q - q0);
    op.c_low = c_small * std::min(1.0, std::pow(2.0, half));
    op.c_up = c_small * std::pow(2.0, std::abs(half));
    op.mu_h6 = std::max(0.0, (q0 - 2.0) / (q0 - 1.0));
    if (c_small < 1.0 && op.mu_h6 > 0.0)
        op.mu_h6 = std::min(1.99, op.mu_h6 + 0.05);
    return op;
}

double SourceSpec::operator()(double t) const {
    double u = std::max(t + shift, 0.0);
    switch (family) {
        case Family::Zero: return 0.0;
        case Family::Affine: return a0 + a1 * u;
        case Family::Power: return c * std::pow(u, m) + d;
        case Family::CappedLinear: return std::min(c * u, cap) + d;
    }
    return 0.0;
}

namespace {

// family antiderivative with Fb(0) = 0, extended below 0 by the value at 0
double base_antiderivative(const SourceSpec& s, double u) {
    if (u < 0.0) {
        SourceSpec at0 = s;
        at0.shift = 0.0;
        return at0(0.0) * u;
    }
    switch (s.family) {
        case SourceSpec::Family::Zero: return 0.0;
        case SourceSpec::Family::Affine: return s.a0 * u + 0.5 * s.a1 * u * u;
        case SourceSpec::Family::Power:
            return s.c * std::pow(u, s.m + 1.0) / (s.m + 1.0) + s.d * u;
        case SourceSpec::Family::CappedLinear: {
            double ustar = s.cap / s.c;
            if (u <= ustar) return 0.5 * s.c * u * u + s.d * u;
            return 0.5 * s.c * ustar * ustar + s.d * ustar + (s.cap + s.d) * (u - ustar);
        }
    }
    return 0.0;
}

} // namespace

double SourceSpec::antiderivative(double t) const {
    return base_antiderivative(*this, t + shift) - base_antiderivative(*this, shift);
}

bool SourceSpec::nonnegative() const {
    for (double t = 0.0; t <= 100.0; t = (t == 0.0) ? 1e-3 : t * 1.6)
        if ((*this)(t) < 0.0) return false;
    return true;
}

bool SourceSpec::nondecreasing() const {
    double prev = (*this)(0.0);
    for (double t = 1e-3; t <= 100.0; t *= 1.3) {
        double v = (*this)(t);
        if (v < prev - 1e-12 * (1.0 + std::abs(prev))) return false;
        prev = v;
    }
    return true;
}

bool SourceSpec::ratio_decreasing(double p) const {
    double prev = std::numeric_limits<double>::infinity();
    for (double t = 1e-4; t <= 1e3; t *= 1.2) {
        double r = (*this)(t) / std::pow(t, p - 1.0);
        if (r >= prev) return false;
        prev = r;
    }
    return true;
}

SourceSpec SourceSpec::shifted(double t0, double q) const {
    SourceSpec out = *this;
    out.shift += t0;
    if (t0 > 0.0 && alpha > 0.0) {
        // f(t + t0) <= alpha (t + t0)^(q-1) + beta; split the power so the
        // growth pair stays valid with only a small bump of alpha:
        // (t + t0)^(q-1) <= (1+eps)^(q-1) t^(q-1) + (1 + 1/eps)^(q-1) t0^(q-1)
        const double eps = 0.05;
        if (q >= 2.0) {
            out.alpha = alpha * std::pow(1.0 + eps, q - 1.0);
            out.beta = beta + alpha * std::pow(1.0 + 1.0 / eps, q - 1.0) * std::pow(t0, q - 1.0);
        } else {
            out.alpha = alpha; // subadditive power for q < 2
            out.beta = beta + alpha * std::pow(t0, q - 1.0);
        }
    }
    return out;
}

SourceSpec SourceSpec::scaled(double factor) const {
    if (factor <= 0.0) throw std::invalid_argument("scale factor must be positive");
    SourceSpec out = *this;
    out.a0 *= factor;
    out.a1 *= factor;
    out.c *= factor;
    out.d *= factor;
    out.cap *= factor;
    out.alpha *= factor;
    out.beta *= factor;
    return out;
}

std::string SourceSpec::family_name() const {
    switch (family) {
        case Family::Zero: return "zero";
        case Family::Affine: return "affine";
        case Family::Power: return "power";
        case Family::CappedLinear: return "capped_linear";
    }
    return "?";
}

void SourceSpec::validate(double q) const {
    // F' = f by central quotient on samples
    for (double t : {0.1, 0.5, 1.0, 2.0, 7.0}) {
        double h = 1e-6 * (1.0 + t);
        double fd = (antiderivative(t + h) - antiderivative(t - h)) / (2.0 * h);
        double f = (*this)(t);
        if (std::abs(fd - f) > 1e-5 * (1.0 + std::abs(f)))
            throw std::invalid_argument("source: antiderivative inconsistent with f");
    }
    // (H5) growth: 0 < f(t) <= alpha t^(q-1) + beta for t > 0
    for (double t = 1e-3; t <= 100.0; t *= 1.4) {
        double f = (*this)(t);
        if (!(f > 0.0)) throw std::invalid_argument("(H5) requires f > 0 on (0,inf)");
        if (f > alpha * std::pow(t, q - 1.0) + beta + 1e-9 * (1.0 + f))
            throw std::invalid_argument("(H5) growth bound violated");
    }
}

SourceSpec SourceSpec::constant(double value) { return affine(value, 0.0); }

SourceSpec SourceSpec::affine(double a0, double a1, double q) {
    SourceSpec s;
    s.family = Family::Affine;
    s.a0 = a0;
    s.a1 = a1;
    s.beta = a0;
    if (a1 == 0.0) {
        s.alpha = 0.0;
    } else if (q == 2.0) {
        s.alpha = a1;
    } else {
        // a1 t <= a1 t^(q-1) + a1 splits across t <= 1 and t >= 1 for q >= 2
        s.alpha = a1;
        s.beta = a0 + a1;
    }
    return s;
}

SourceSpec SourceSpec::power(double c, double m, double d) {
    SourceSpec s;
    s.family = Family::Power;
    s.c = c;
    s.m = m;
    s.d = d;
    s.alpha = c; // valid when m <= q-1; validate(q) re-checks
    s.beta = c + d;
    return s;
}

SourceSpec SourceSpec::capped_linear(double c, double cap, double d) {
    SourceSpec s;
    s.family = Family::CappedLinear;
    s.c = c;
    s.cap = cap;
    s.d = d;
    s.alpha = 0.0;
    s.beta = cap + d;
    return s;
}

SourceSpec SourceSpec::zero() {
    SourceSpec s;
    s.family = Family::Zero;
    s.alpha = 0.0;
    s.beta = 0.0;
    return s;
}

namespace {

WeightSpec weight_from_json(const nlohmann::json& j) {
    WeightSpec w;
    std::string kind = j.value("kind", "constant");
    if (kind == "constant") w.kind = WeightSpec::Kind::Constant;
    else if (kind == "affine") w.kind = WeightSpec::Kind::Affine;
    else if (kind == "saturating") w.kind = WeightSpec::Kind::Saturating;
    else throw std::invalid_argument("unknown weight kind: " + kind);
    w.h0 = j.value("h0", 1.0);
    w.h1 = j.value("h1", 0.0);
    return w;
}

nlohmann::json weight_to_json(const WeightSpec& w) {
    const char* kind = w.kind == WeightSpec::Kind::Constant ? "constant"
                     : w.kind == WeightSpec::Kind::Affine ? "affine" : "saturating";
    return {{"kind", kind}, {"h0", w.h0}, {"h1", w.h1}};
}

} // namespace

OperatorSpec operator_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string family = j.at("family").get<std::string>();
    int dim = j.value("dim", 2);
    OperatorSpec op;
    if (family == "power") {
        op = OperatorSpec::p_laplacian(j.at("p").get<double>(), dim);
    } else if (family == "weighted") {
        op = OperatorSpec::weighted_p_laplacian(j.at("p").get<double>(),
                                                weight_from_json(j.at("h")), dim);
    } else if (family == "two_regime") {
        op = OperatorSpec::two_regime(j.at("q0").get<double>(), j.at("q").get<double>(),
                                      j.value("c_small", 1.0), dim);
    } else {
        throw std::invalid_argument("unknown operator family: " + family);
    }
    if (j.contains("mu_h6")) op.mu_h6 = j["mu_h6"].get<double>();
    return op;
}

std::string operator_to_json(const OperatorSpec& op) {
    nlohmann::json j;
    j["family"] = op.family_name();
    j["dim"] = op.dim;
    j["p"] = op.p;
    j["q"] = op.q;
    j["q0"] = op.q0;
    j["c_small"] = op.c_small;
    j["c_low"] = op.c_low;
    j["c_up"] = op.c_up;
    j["mu_h6"] = op.mu_h6;
    if (op.family == OperatorSpec::Family::Weighted) j["h"] = weight_to_json(op.weight);
    return j.dump();
}

SourceSpec source_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string family = j.at("family").get<std::string>();
    SourceSpec s;
    if (family == "zero") s = SourceSpec::zero();
    else if (family == "affine")
        s = SourceSpec::affine(j.value("a0", 0.0), j.value("a1", 0.0), j.value("q", 2.0));
    else if (family == "power")
        s = SourceSpec::power(j.at("c").get<double>(), j.at("m").get<double>(), j.value("d", 0.0));
    else if (family == "capped_linear")
        s = SourceSpec::capped_linear(j.at("c").get<double>(), j.at("cap").get<double>(),
                                      j.value("d", 0.0));
    else throw std::invalid_argument("unknown source family: " + family);
    if (j.contains("alpha")) s.alpha = j["alpha"].get<double>();
    if (j.contains("beta")) s.beta = j["beta"].get<double>();
    if (j.contains("shift")) s.shift = j["shift"].get<double>();
    return s;
}

std::string source_to_json(const SourceSpec& s) {
    nlohmann::json j;
    j["family"] = s.family_name();
    switch (s.family) {
        case SourceSpec::Family::Zero: break;
        case SourceSpec::Family::Affine: j["a0"] = s.a0; j["a1"] = s.a1; break;
        case SourceSpec::Family::Power: j["c"] = s.c; j["m"] = s.m; j["d"] = s.d; break;
        case SourceSpec::Family::CappedLinear: j["c"] = s.c; j["cap"] = s.cap; j["d"] = s.d; break;
    }
    j["alpha"] = s.alpha;
    j["beta"] = s.beta;
    j["shift"] = s.shift;
    return j.dump();
}

} // namespace symm
