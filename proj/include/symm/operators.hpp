#pragma once

#include <string>
#include <vector>

namespace symm {

// Nonlinearity weight h(t) for the t-dependent operator family and the
// lower-order-term problem. Positive C^1 map.
struct WeightSpec {
    enum class Kind { Constant, Affine, Saturating };
    Kind kind = Kind::Constant;
    double h0 = 1.0; // Constant: h0; Affine: h0 + h1 t; Saturating: h0 + h1 t/(1+t)
    double h1 = 0.0;

    double operator()(double t) const;
    double deriv(double t) const;
    double inf_on(double t_lo, double t_hi) const;
};

// Quasilinear operator a(t, z) = e(t, |z|) z from a parametric family, with the
// structural constants used by the a-priori bounds:
//   C_s s^q0 <= s^2 e(t, s)                       for s <= 1
//   C_lo s^q <= s^2 e(t, s) <= C_up (s^p + |t|^p + 1)  for s >= 1
// and mu_h6 in [0, 2) with d/ds b(t, s) >= b(t, s)^mu_h6 for small s, where
// b(t, s) = s e(t, s) = |a(t, z)| at |z| = s.
struct OperatorSpec {
    enum class Family { Power, Weighted, TwoRegime };

    Family family = Family::Power;
    int dim = 2;
    double p = 2.0, q = 2.0, q0 = 2.0;
    double c_small = 1.0; // C_s
    double c_low = 1.0;   // C_*
    double c_up = 1.0;    // C^*
    double mu_h6 = 0.0;
    WeightSpec weight;    // Weighted family only

    // b(t, s) = s e(t, s); the flux formulation integrates this directly so the
    // s -> 0 degeneracy of e never appears.
    double b(double t, double s) const;
    double e(double t, double s) const;
    double db_ds(double t, double s) const;
    // monotone scalar inverse of s -> b(t, s); bisection to 1e-12 relative with
    // a closed form for the pure/weighted power families (identical values).
    double invert_b(double t, double y) const;
    bool t_dependent() const { return family == Family::Weighted && weight.kind != WeightSpec::Kind::Constant; }

    // operator with e(t, s) replaced by e(t + t0, s); identity for
    // t-independent families
    OperatorSpec shifted(double t0) const;

    std::string family_name() const;

    // Sampled hypothesis checks; throws std::invalid_argument listing the first
    // violated condition.
    void validate() const;

    static OperatorSpec p_laplacian(double p, int dim = 2);
    static OperatorSpec weighted_p_laplacian(double p, WeightSpec w, int dim = 2);
    // b(s) = C_s s^(q0-1) (1 + s^2)^((q-q0)/2): exponent q0 near 0, q at infinity
    static OperatorSpec two_regime(double q0, double q, double c_small, int dim = 2);

    double t_shift = 0.0;
};

// Source nonlinearity f with closed-form antiderivative F (F(0) = 0), growth
// constants (alpha, beta) for 0 < f(t) <= alpha t^(q-1) + beta, and the
// structural flags the comparison theorems branch on. f is extended by f(0)
// below t = 0.
struct SourceSpec {
    enum class Family { Zero, Affine, Power, CappedLinear };

    Family family = Family::Affine;
    double a0 = 1.0, a1 = 0.0; // Affine: a0 + a1 t
    double c = 1.0, m = 1.0, d = 0.0; // Power: c t^m + d
    double cap = 1.0;          // CappedLinear: min(c t, cap) + d
    double shift = 0.0;        // evaluate the base family at t + shift
    double alpha = 0.0, beta = 1.0; // growth constants vs exponent q-1

    double operator()(double t) const;
    double antiderivative(double t) const; // F with F(0) = 0
    double f0() const { return (*this)(0.0); }

    bool nonnegative() const;
    bool nondecreasing() const;
    // f(t)/t^(p-1) decreasing on (0, inf)
    bool ratio_decreasing(double p) const;

    // f(. + t0); the growth pair (alpha, beta) is re-derived for exponent q
    SourceSpec shifted(double t0, double q = 2.0) const;
    SourceSpec scaled(double factor) const; // factor * f

    std::string family_name() const;

    // Checks F' = f by quadrature on samples and the (H5) growth inequality
    // for the stored (alpha, beta, q); throws on violation.
    void validate(double q) const;

    static SourceSpec constant(double value);
    static SourceSpec affine(double a0, double a1, double q = 2.0);
    static SourceSpec power(double c, double m, double d = 0.0);
    static SourceSpec capped_linear(double c, double cap, double d = 0.0);
    static SourceSpec zero();
};

// JSON: {"family": name, ...parameters}; see the README for the schemas.
OperatorSpec operator_from_json(const std::string& text);
std::string operator_to_json(const OperatorSpec& op);
SourceSpec source_from_json(const std::string& text);
std::string source_to_json(const SourceSpec& src);

} // namespace symm
