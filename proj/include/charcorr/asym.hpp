#pragma once

#include "chars.hpp"

namespace charcorr {

// Omega(x, y) = sum_n max(0, 1 - |n x - y|)^2, the kernel of every
// asymptotic demerit formula. Even in both arguments and periodic:
// Omega(x, y + x) = Omega(x, y).
inline double omega(double x, double y) {
    require(x != 0.0, errc::zero_x, "omega needs x != 0");
    const double ax = std::fabs(x);
    // nonzero terms need |n*ax - y| < 1; scan with a one-term safety margin
    // on each side so exact-boundary terms cannot be missed
    const std::int64_t lo = static_cast<std::int64_t>(std::ceil((y - 1.0) / ax)) - 1;
    const std::int64_t hi = static_cast<std::int64_t>(std::floor((y + 1.0) / ax)) + 1;
    double acc = 0.0;
    for (std::int64_t n = lo; n <= hi; ++n) {
        double t = 1.0 - std::fabs(static_cast<double>(n) * ax - y);
        if (t > 0.0) acc += t * t;
    }
    return acc;
}

// Phi(x) = Omega(1/x, 0), closed form: with m = floor(x),
// 2m+1 - 2m(m+1)/x + m(m+1)(2m+1)/(3x^2); identically 1 on (0,1]
inline double phi_closed(double x) {
    require(x > 0.0, errc::non_positive, "phi is defined for x > 0");
    double m = std::floor(x);
    return 2.0 * m + 1.0 - 2.0 * m * (m + 1.0) / x + m * (m + 1.0) * (2.0 * m + 1.0) / (3.0 * x * x);
}

// Psi(x) = Omega(1/x, 1/(2x)), closed form: with m the nearest integer
// (x in [m-1/2, m+1/2]), 2m - 2m^2/x + m(4m^2-1)/(6x^2); identically 0 on
// (0, 1/2]
inline double psi_closed(double x) {
    require(x > 0.0, errc::non_positive, "psi is defined for x > 0");
    if (x <= 0.5) return 0.0;
    double m = std::floor(x + 0.5);
    return 2.0 * m - 2.0 * m * m / x + m * (4.0 * m * m - 1.0) / (6.0 * x * x);
}

enum class Family { Additive, Multiplicative };

// Which pair of characters / which decimation class the limit law covers:
//  SameOrTrivial        trivial decimation d = p^k, or equal characters
//  ConjugateOrReversing reversing decimation d = -p^k, or conjugate characters
//  Unrelated            everything else (limit does not involve the shifts)
//  Quadratic            equal quadratic characters (multiplicative only)
enum class Subcase { SameOrTrivial, ConjugateOrReversing, Unrelated, Quadratic };

struct AsymptoticCase {
    Family family;
    Subcase subcase;
    double lambda;     // limiting fractional length
    double delta = 0;  // limiting fractional difference of shifts
    double sigma = 0;  // limiting fractional sum of shifts
    std::uint64_t p = 2; // characteristic; decides sigma' in the additive reversing case
};

// limiting CDF for pairs of additive character sequences
inline double acdf_additive(const AsymptoticCase& c) {
    require(c.family == Family::Additive, errc::bad_case, "case family must be additive");
    require(c.lambda > 0.0, errc::bad_case, "limiting fractional length must be positive");
    const double L = c.lambda;
    switch (c.subcase) {
        case Subcase::SameOrTrivial:
            return -(2.0 / 3.0) * L + omega(1.0 / L, 0.0) + omega(1.0 / L, c.delta / L);
        case Subcase::ConjugateOrReversing: {
            const double sigma_eff = c.sigma + (c.p % 2 == 1 ? 0.5 : 0.0);
            return -(2.0 / 3.0) * L + omega(1.0 / L, 0.0) + omega(1.0 / L, 1.0 + sigma_eff / L);
        }
        case Subcase::Unrelated:
            return omega(1.0 / L, 0.0);
        default:
            fail(errc::bad_case, "quadratic subcase applies to multiplicative sequences only");
    }
}

// limiting CDF for pairs of multiplicative character sequences
inline double acdf_multiplicative(const AsymptoticCase& c) {
    require(c.family == Family::Multiplicative, errc::bad_case, "case family must be multiplicative");
    require(c.lambda > 0.0, errc::bad_case, "limiting fractional length must be positive");
    const double L = c.lambda;
    switch (c.subcase) {
        case Subcase::SameOrTrivial:
            return -(2.0 / 3.0) * L + omega(1.0 / L, 0.0) + omega(1.0 / L, c.delta / L);
        case Subcase::ConjugateOrReversing:
            return -(2.0 / 3.0) * L + omega(1.0 / L, 0.0) + omega(1.0 / L, 1.0 + c.sigma / L);
        case Subcase::Unrelated:
            return omega(1.0 / L, 0.0);
        case Subcase::Quadratic:
            return -(4.0 / 3.0) * L + omega(1.0 / L, 0.0) + omega(1.0 / L, c.delta / L) + omega(1.0 / L, 1.0 + c.sigma / L);
    }
    fail(errc::bad_case, "unknown subcase");
}

inline double acdf(const AsymptoticCase& c) {
    return c.family == Family::Additive ? acdf_additive(c) : acdf_multiplicative(c);
}

// limiting CDF for reversing m-sequence pairs as an explicit function of the
// limiting fractional sum of shifts: 1/3 + frac(S')^2 + (frac(S')-1)^2
inline double reversing_msequence_cdf_limit(double sigma, std::uint64_t p) {
    double sp = sigma + (p % 2 == 1 ? 0.5 : 0.0);
    double frac = sp - std::floor(sp);
    return 1.0 / 3.0 + frac * frac + (frac - 1.0) * (frac - 1.0);
}

// --- counting quadruples (t,u,v,w) in [0,l)^4 with t+u = v+w ---------------

enum class QuadrupleKind {
    A, // no side condition;           count = (2 l^3 + l) / 3
    B, // v - t = a (mod m);           count = l^2 Omega(m/l, a/l)
    C, // w - t = a (mod m);           same count as B
    D, // t + u = a (mod m);           count = l^2 Omega(m/l, 1 - (a+1)/l)
};

// Exact closed-form counts, evaluated in integer arithmetic. The test suite
// checks them against brute-force enumeration and against l^2 * omega(...).
inline std::int64_t count_quadruples(QuadrupleKind kind, std::int64_t l, std::int64_t m = 1, std::int64_t a = 0) {
    require(l >= 1, errc::bad_args, "need l >= 1");
    if (kind == QuadrupleKind::A) return (2 * l * l * l + l) / 3;
    require(m >= 1, errc::bad_args, "need m >= 1");
    auto ramp_sq_sum = [&](std::int64_t offset) {
        // sum over n of max(0, l - |offset + n m|)^2
        std::int64_t acc = 0;
        std::int64_t nlo = static_cast<std::int64_t>(std::floor(static_cast<double>(-l - offset) / static_cast<double>(m))) - 1;
        std::int64_t nhi = static_cast<std::int64_t>(std::ceil(static_cast<double>(l - offset) / static_cast<double>(m))) + 1;
        for (std::int64_t n = nlo; n <= nhi; ++n) {
            std::int64_t t = l - std::llabs(offset + n * m);
            if (t > 0) acc += t * t;
        }
        return acc;
    };
    switch (kind) {
        case QuadrupleKind::B:
        case QuadrupleKind::C:
            return ramp_sq_sum(mod_floor(a, m));
        case QuadrupleKind::D:
            return ramp_sq_sum(mod_floor(a, m) - (l - 1));
        default:
            fail(errc::bad_args, "unknown quadruple kind");
    }
}

// --- the Gauss-sum average H(kappa, lambda, mu, nu) -------------------------
//
// H = (q-1)^{-3} sum over xi of G(kappa xi^d) G(lambda xi)
//     conj(G(mu xi^d) G(nu xi)), with characters indexed against the field's
//     designated primitive element.

namespace detail {

inline std::int64_t char_mod(const FiniteField& F) { return static_cast<std::int64_t>(F.q() - 1); }

// chi_j(-1): -1 = alpha^sigma with sigma = 0 (p = 2) or (q-1)/2 (p odd)
inline cplx char_at_minus_one(const FiniteField& F, std::int64_t j) {
    std::int64_t sigma = F.p() == 2 ? 0 : char_mod(F) / 2;
    return field_char_at_exp(F, j, sigma);
}

} // namespace detail

// main term of H per the case table: the value the full average approaches,
// with error at most q^{3/2}/(q-1)^2 (trivial/reversing d) or
// |d| q^{3/2}/(q-1)^2 (otherwise)
inline cplx h_main_term(const FiniteField& F, std::int64_t ik, std::int64_t il, std::int64_t im, std::int64_t iv,
                        std::int64_t d) {
    const std::int64_t m = detail::char_mod(F);
    auto cls = F.classify_decimation(d); // validates gcd(d, q-1) = 1
    auto eq = [&](std::int64_t a, std::int64_t b) { return mod_floor(a, m) == mod_floor(b, m); };
    if (eq(ik, im) && eq(il, iv)) return {1.0, 0.0};
    if (cls.trivial()) {
        if (eq(ik, d * iv) && eq(im, d * il)) return {1.0, 0.0};
        return {0.0, 0.0};
    }
    if (cls.reversing()) {
        if (eq(ik, d * il) && eq(im, d * iv)) return detail::char_at_minus_one(F, ik - im);
        return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

inline double h_error_bound(const FiniteField& F, std::int64_t d) {
    auto cls = F.classify_decimation(d);
    double q = static_cast<double>(F.q());
    double base = std::pow(q, 1.5) / sqr(q - 1.0);
    if (cls.trivial() || cls.reversing()) return base;
    return static_cast<double>(std::llabs(d)) * base;
}

// the average itself, by direct summation over the character group
inline cplx h_brute(const FiniteField& F, std::int64_t ik, std::int64_t il, std::int64_t im, std::int64_t iv,
                    std::int64_t d) {
    require(F.q() <= 64, errc::field_too_large, "h_brute is limited to q <= 64");
    F.classify_decimation(d); // validates gcd(d, q-1) = 1
    const std::int64_t m = detail::char_mod(F);
    const auto& g = gauss_table(F);
    cplx acc{0.0, 0.0};
    for (std::int64_t e = 0; e < m; ++e) {
        cplx term = g[static_cast<std::size_t>(mod_floor(ik + d * e, m))] * g[static_cast<std::size_t>(mod_floor(il + e, m))] *
                    std::conj(g[static_cast<std::size_t>(mod_floor(im + d * e, m))] * g[static_cast<std::size_t>(mod_floor(iv + e, m))]);
        acc += term;
    }
    double md = static_cast<double>(m);
    return acc / (md * md * md);
}

} // namespace charcorr
