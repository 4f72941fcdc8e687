#pragma once

#include "fft.hpp"
#include "seqgen.hpp"

namespace charcorr {

// All aperiodic crosscorrelation values C_{f,g}(s) for s in [-(l-1), l-1].
struct CorrelationProfile {
    std::size_t len = 0;
    std::vector<cplx> values; // index s + (len-1)

    cplx at(std::int64_t s) const {
        std::int64_t l = static_cast<std::int64_t>(len);
        if (s <= -l || s >= l) return {0.0, 0.0};
        return values[static_cast<std::size_t>(s + l - 1)];
    }
    std::int64_t min_shift() const { return -(static_cast<std::int64_t>(len) - 1); }
    std::int64_t max_shift() const { return static_cast<std::int64_t>(len) - 1; }

    // sum over all shifts of |C(s)|^2
    double sum_sq() const {
        kahan_sum acc;
        for (const auto& v : values) acc.add(std::norm(v));
        return acc.value();
    }
};

namespace detail {

inline void check_equal_length(const ComplexSequence& f, const ComplexSequence& g) {
    require(f.size() == g.size() && f.size() >= 1, errc::length_mismatch,
            "correlation requires two nonempty sequences of equal length");
}

} // namespace detail

// C_{f,g}(s) = sum_j f_j * conj(g_{j+s}), zero-padding outside the index
// range; the O(l^2) definitional sum, the reference for every fast path.
inline CorrelationProfile crosscorrelate(const ComplexSequence& f, const ComplexSequence& g) {
    detail::check_equal_length(f, g);
    const std::int64_t l = static_cast<std::int64_t>(f.size());
    CorrelationProfile prof;
    prof.len = f.size();
    prof.values.assign(static_cast<std::size_t>(2 * l - 1), cplx{0.0, 0.0});
    for (std::int64_t s = -(l - 1); s <= l - 1; ++s) {
        cplx acc{0.0, 0.0};
        const std::int64_t jlo = std::max<std::int64_t>(0, -s);
        const std::int64_t jhi = std::min<std::int64_t>(l - 1, l - 1 - s);
        for (std::int64_t j = jlo; j <= jhi; ++j) acc += f.terms[static_cast<std::size_t>(j)] * std::conj(g.terms[static_cast<std::size_t>(j + s)]);
        prof.values[static_cast<std::size_t>(s + l - 1)] = acc;
    }
    return prof;
}

// same profile through zero-padded transforms; agrees with crosscorrelate()
// to better than 1e-9 relative (asserted by the test suite)
inline CorrelationProfile crosscorrelate_fast(const ComplexSequence& f, const ComplexSequence& g) {
    detail::check_equal_length(f, g);
    const std::size_t l = f.size();
    const std::size_t n = detail::next_pow2(2 * l - 1);
    std::vector<cplx> fa = detail::fft_of(f.terms, n);
    std::vector<cplx> ga = detail::fft_of(g.terms, n);
    for (std::size_t m = 0; m < n; ++m) fa[m] *= std::conj(ga[m]);
    detail::fft(fa, true);
    CorrelationProfile prof;
    prof.len = l;
    prof.values.resize(2 * l - 1);
    const std::int64_t ll = static_cast<std::int64_t>(l);
    for (std::int64_t s = -(ll - 1); s <= ll - 1; ++s)
        prof.values[static_cast<std::size_t>(s + ll - 1)] = fa[static_cast<std::size_t>(mod_floor(-s, static_cast<std::int64_t>(n)))];
    return prof;
}

// sum_s |C_{f,g}(s)|^2 by Parseval on the zero-padded spectra
inline double cross_sum_sq(const ComplexSequence& f, const ComplexSequence& g) {
    detail::check_equal_length(f, g);
    const std::size_t l = f.size();
    const std::size_t n = detail::next_pow2(2 * l - 1);
    std::vector<cplx> fa = detail::fft_of(f.terms, n);
    std::vector<cplx> ga = detail::fft_of(g.terms, n);
    kahan_sum acc;
    for (std::size_t m = 0; m < n; ++m) acc.add(std::norm(fa[m]) * std::norm(ga[m]));
    return acc.value() / static_cast<double>(n);
}

// C_{f,f}(0) = sum |f_t|^2
inline double energy(const ComplexSequence& f) {
    kahan_sum acc;
    for (const auto& t : f.terms) acc.add(std::norm(t));
    return acc.value();
}

// DF(f) = sum_{s != 0} |C_{f,f}(s)|^2 / |C_{f,f}(0)|^2
inline double demerit_factor(const ComplexSequence& f) {
    double e = energy(f);
    require(e > 0.0, errc::zero_energy, "demerit factor needs C_{f,f}(0) != 0");
    return (cross_sum_sq(f, f) - e * e) / (e * e);
}

// CDF(f,g) = sum_s |C_{f,g}(s)|^2 / (|C_{f,f}(0)| * |C_{g,g}(0)|);
// equals DF(f) + 1 when f = g
inline double cross_demerit(const ComplexSequence& f, const ComplexSequence& g) {
    detail::check_equal_length(f, g);
    double ef = energy(f);
    double eg = energy(g);
    require(ef > 0.0 && eg > 0.0, errc::zero_energy, "crosscorrelation demerit factor needs nonzero energies");
    return cross_sum_sq(f, g) / (ef * eg);
}

inline double merit_factor(const ComplexSequence& f) { return 1.0 / demerit_factor(f); }
inline double cross_merit(const ComplexSequence& f, const ComplexSequence& g) { return 1.0 / cross_demerit(f, g); }

// sum over t+u=v+w of f_t g_u conj(f_v g_w): the quadruple-sum route to
// sum_s |C_{f,g}(s)|^2, kept independent of the correlation path
inline double norm4_quadruple_oracle(const ComplexSequence& f, const ComplexSequence& g) {
    detail::check_equal_length(f, g);
    const std::int64_t l = static_cast<std::int64_t>(f.size());
    require(l <= 64, errc::too_long, "quadruple-sum oracle is limited to length <= 64");
    cplx acc{0.0, 0.0};
    for (std::int64_t t = 0; t < l; ++t)
        for (std::int64_t u = 0; u < l; ++u)
            for (std::int64_t v = 0; v < l; ++v) {
                std::int64_t w = t + u - v;
                if (w < 0 || w >= l) continue;
                acc += f.terms[t] * g.terms[u] * std::conj(f.terms[v] * g.terms[w]);
            }
    return acc.real();
}

struct PursleySarwateGap {
    double lower; // 1 - sqrt(DF(f) DF(g))
    double upper; // 1 + sqrt(DF(f) DF(g))
    double cdf;
};

inline PursleySarwateGap pursley_sarwate_gap(const ComplexSequence& f, const ComplexSequence& g) {
    double root = std::sqrt(demerit_factor(f) * demerit_factor(g));
    return PursleySarwateGap{1.0 - root, 1.0 + root, cross_demerit(f, g)};
}

struct DemeritReport {
    double df_f;
    double df_g;
    double cdf;
    double cmf;
    double ps_lower;
    double ps_upper;
};

inline DemeritReport demerit_report(const ComplexSequence& f, const ComplexSequence& g) {
    DemeritReport r{};
    r.df_f = demerit_factor(f);
    r.df_g = demerit_factor(g);
    r.cdf = cross_demerit(f, g);
    r.cmf = 1.0 / r.cdf;
    double root = std::sqrt(r.df_f * r.df_g);
    r.ps_lower = 1.0 - root;
    r.ps_upper = 1.0 + root;
    return r;
}

namespace detail {

// |DFT|^2 of every cyclic rotation of a sequence, zero-padded to n points;
// row j corresponds to the left rotation by j places
struct RotationSpectra {
    std::size_t rows = 0;
    std::size_t n = 0;
    double seq_energy = 0.0;
    std::vector<double> power; // rows * n, row-major

    const double* row(std::size_t j) const { return power.data() + j * n; }

    // sum_s |C_{T^j f, T^k g}(s)|^2 = (1/n) sum_m P_j[m] Q_k[m]
    static double pair_sum_sq(const RotationSpectra& a, std::size_t j, const RotationSpectra& b, std::size_t k) {
        const double* pa = a.row(j);
        const double* pb = b.row(k);
        double acc = 0.0;
        for (std::size_t m = 0; m < a.n; ++m) acc += pa[m] * pb[m];
        return acc / static_cast<double>(a.n);
    }
};

inline RotationSpectra rotation_spectra(const ComplexSequence& seq, std::size_t rows_limit = 0) {
    const std::size_t l = seq.size();
    RotationSpectra rs;
    rs.rows = rows_limit == 0 ? l : rows_limit;
    rs.n = next_pow2(2 * l - 1);
    rs.seq_energy = energy(seq);
    rs.power.resize(rs.rows * rs.n);
    std::vector<cplx> buf(rs.n);
    for (std::size_t j = 0; j < rs.rows; ++j) {
        std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
        for (std::size_t t = 0; t < l; ++t) buf[t] = seq.terms[(t + j) % l];
        fft(buf, false);
        double* dst = rs.power.data() + j * rs.n;
        for (std::size_t m = 0; m < rs.n; ++m) dst[m] = std::norm(buf[m]);
    }
    return rs;
}

// DF of each cyclic rotation, from its power spectrum
inline std::vector<double> rotation_dfs(const RotationSpectra& rs) {
    std::vector<double> out(rs.rows);
    const double e2 = rs.seq_energy * rs.seq_energy;
    for (std::size_t j = 0; j < rs.rows; ++j) {
        const double* p = rs.row(j);
        kahan_sum acc;
        for (std::size_t m = 0; m < rs.n; ++m) acc.add(p[m] * p[m]);
        out[j] = (acc.value() / static_cast<double>(rs.n) - e2) / e2;
    }
    return out;
}

} // namespace detail

// (1/l^2) * sum over all shift pairs (j,k) of CDF(T^j f, T^k g), the
// quantity whose closed form for m-sequence pairs is
// 1 + 2/(3l) - 1/l^2 + 1/(3l^3)
inline double avg_cdf_over_all_shifts(const ComplexSequence& f, const ComplexSequence& g) {
    detail::check_equal_length(f, g);
    const std::size_t l = f.size();
    auto pf = detail::rotation_spectra(f);
    auto pg = detail::rotation_spectra(g);
    const double denom = pf.seq_energy * pg.seq_energy;
    kahan_sum acc;
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t k = 0; k < l; ++k) acc.add(detail::RotationSpectra::pair_sum_sq(pf, j, pg, k) / denom);
    return acc.value() / static_cast<double>(l * l);
}

inline double sarwate_average_formula(std::size_t l) {
    double ld = static_cast<double>(l);
    return 1.0 + 2.0 / (3.0 * ld) - 1.0 / (ld * ld) + 1.0 / (3.0 * ld * ld * ld);
}

} // namespace charcorr
