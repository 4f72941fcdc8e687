#pragma once

#include <limits>

#include "asym.hpp"

namespace charcorr {

// a3 x^3 + a2 x^2 + a1 x + a0, with a bracket isolating one real root
struct CubicSpec {
    double a3, a2, a1, a0;
    double lo, hi;
    std::string name;

    double eval(double x) const { return ((a3 * x + a2) * x + a1) * x + a0; }
    double deriv(double x) const { return (3.0 * a3 * x + 2.0 * a2) * x + a1; }
    std::string describe() const { return name; }
};

// safeguarded Newton within the bracket, to 1e-13 in x
inline double cubic_root(const CubicSpec& spec) {
    double lo = spec.lo, hi = spec.hi;
    double flo = spec.eval(lo), fhi = spec.eval(hi);
    require(flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0), errc::no_sign_change,
            "bracket endpoints must give opposite cubic signs");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fx = spec.eval(x);
        if ((fx < 0.0) == (flo < 0.0))
            lo = x;
        else
            hi = x;
        double dx = spec.deriv(x);
        double xn = dx != 0.0 ? x - fx / dx : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) < 1e-13) return xn;
        x = xn;
    }
    return x;
}

// the paper-relevant cubics and their named roots
inline CubicSpec cubic_lambda_trunc() { return CubicSpec{2, 0, -6, 3, 0.5, 1.0, "2x^3-6x+3"}; }
inline CubicSpec cubic_lambda_app() { return CubicSpec{1, 0, -12, 12, 1.0, 2.0, "x^3-12x+12"}; }
inline CubicSpec cubic_min_cdf_conjugate() { return CubicSpec{6, -42, 54, -19, 0.5, 0.7, "6x^3-42x^2+54x-19"}; }
inline CubicSpec cubic_max_cmf_conjugate() { return CubicSpec{19, -54, 42, -6, 1.4, 1.7, "19x^3-54x^2+42x-6"}; }
inline CubicSpec cubic_min_cdf_quadratic() { return CubicSpec{3, -33, 33, -7, 0.2, 0.4, "3x^3-33x^2+33x-7"}; }
inline CubicSpec cubic_max_cmf_quadratic() { return CubicSpec{7, -33, 33, -3, 3.0, 3.5, "7x^3-33x^2+33x-3"}; }

inline double lambda_trunc() { return cubic_root(cubic_lambda_trunc()); }   // 0.557874...
inline double lambda_app() { return cubic_root(cubic_lambda_app()); }       // 1.115749...

// Global minimizers of y -> Omega(x, y) for fixed x != 0: a discrete set
// {(n + 1/2)|x|} when 0 < |x| <= 2, whole intervals [n|x|+1, (n+1)|x|-1]
// when |x| >= 2; minimum value Omega(x, x/2) in both regimes.
struct ShiftOptimum {
    bool discrete;     // true: argmin = {offset + n*period}
    double period;     // |x|
    double offset;     // |x|/2 (discrete form)
    double lo, hi;     // [lo, hi] + n*period (interval form; lo = hi = offset at |x| = 2)
    double min_value;  // Omega(x, x/2)
};

inline ShiftOptimum optimal_shift_set(double x) {
    require(x != 0.0, errc::zero_x, "optimal shift set needs x != 0");
    double ax = std::fabs(x);
    ShiftOptimum o{};
    o.period = ax;
    o.offset = 0.5 * ax;
    o.min_value = omega(x, x / 2.0);
    if (ax <= 2.0) {
        o.discrete = true;
        o.lo = o.hi = o.offset;
    } else {
        o.discrete = false;
        o.lo = 1.0;
        o.hi = ax - 1.0;
    }
    return o;
}

struct OptimumReport {
    Family family;
    Subcase subcase;
    double lambda;            // argmin fractional length (right endpoint when an interval)
    bool lambda_is_interval;  // Unrelated: min attained on all of (0, 1]
    double lambda_lo;
    double delta;             // argmin shift parameters, NaN when not applicable
    double sigma;
    double min_value;
    double matched_root;      // closed-form root the minimum must match
    double residual;          // |min_value - matched_root|
    std::string cubic;
};

// Minimize the limiting CDF over (lambda, shifts): shifts are first fixed at
// their Omega-optimal values, then the remaining one-dimensional
// piecewise-smooth function of lambda is minimized by a dense grid plus
// golden-section refinement (it has kinks, so no derivative method).
inline OptimumReport minimize_acdf(Family family, Subcase subcase) {
    if (subcase == Subcase::Quadratic)
        require(family == Family::Multiplicative, errc::bad_case, "quadratic subcase is multiplicative only");

    auto objective = [&](double lambda) {
        AsymptoticCase c{family, subcase, lambda, 0.0, 0.0, 2};
        switch (subcase) {
            case Subcase::SameOrTrivial:
                c.delta = 0.5;
                break;
            case Subcase::ConjugateOrReversing:
                c.sigma = 0.5 - lambda; // makes the Omega argument (n+1/2)/lambda
                break;
            case Subcase::Quadratic:
                c.delta = 0.5;
                c.sigma = 0.5 - lambda;
                break;
            case Subcase::Unrelated:
                break;
        }
        return acdf(c);
    };

    OptimumReport rep{};
    rep.family = family;
    rep.subcase = subcase;
    rep.delta = std::numeric_limits<double>::quiet_NaN();
    rep.sigma = std::numeric_limits<double>::quiet_NaN();
    rep.lambda_is_interval = false;
    rep.lambda_lo = 0.0;

    if (subcase == Subcase::Unrelated) {
        // Omega(1/lambda, 0) = 1 on (0,1], strictly increasing beyond
        rep.lambda = 1.0;
        rep.lambda_is_interval = true;
        rep.min_value = objective(1.0);
        rep.matched_root = 1.0;
        rep.cubic = "x-1";
        rep.residual = std::fabs(rep.min_value - rep.matched_root);
        return rep;
    }

    const double step = 1e-3;
    double best_l = step, best_v = objective(step);
    for (double l = 2 * step; l <= 4.0 + 1e-12; l += step) {
        double v = objective(l);
        if (v < best_v) {
            best_v = v;
            best_l = l;
        }
    }
    double lo = std::max(step / 2, best_l - 2 * step);
    double hi = std::min(4.0, best_l + 2 * step);
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective(x2);
        }
    }
    rep.lambda = 0.5 * (a + b);
    rep.min_value = objective(rep.lambda);

    switch (subcase) {
        case Subcase::SameOrTrivial:
            rep.delta = 0.5;
            rep.matched_root = cubic_root(cubic_min_cdf_conjugate());
            rep.cubic = cubic_min_cdf_conjugate().describe();
            break;
        case Subcase::ConjugateOrReversing:
            rep.sigma = 0.5 - rep.lambda;
            rep.matched_root = cubic_root(cubic_min_cdf_conjugate());
            rep.cubic = cubic_min_cdf_conjugate().describe();
            break;
        case Subcase::Quadratic:
            rep.delta = 0.5;
            rep.sigma = 0.5 - rep.lambda;
            rep.matched_root = cubic_root(cubic_min_cdf_quadratic());
            rep.cubic = cubic_min_cdf_quadratic().describe();
            break;
        default:
            break;
    }
    rep.residual = std::fabs(rep.min_value - rep.matched_root);
    return rep;
}

} // namespace charcorr
