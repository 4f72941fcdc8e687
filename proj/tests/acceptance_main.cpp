// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every tolerance is pinned here, in code.

#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "charcorr/charcorr.hpp"

using namespace charcorr;

namespace {

int failures = 0;

void report(int criterion, const char* label, bool pass, const std::string& detail) {
    std::printf("criterion %02d %s  %s (%s)\n", criterion, pass ? "PASS" : "FAIL", label, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) { return fmt_g12(v); }

double circ_dist(double a, double b) {
    // distance between a and b on R/Z
    double d = std::fabs(std::remainder(a - b, 1.0));
    return d;
}

struct ScanSummary {
    double min_cdf = std::numeric_limits<double>::infinity();
    double max_cdf = -std::numeric_limits<double>::infinity();
    double argmin_frac = 0.0;
    double max_dev = 0.0;   // vs the limiting formula column
    double rms_dev = 0.0;
    double mean_cdf = 0.0;
    double ps_at_argmin = 0.0; // CDF + sqrt(DF_f DF_g) at the CDF-minimizing shift
    double ps_max_violation = 0.0;
};

ScanSummary summarize(const std::vector<ScanRow>& rows) {
    ScanSummary s;
    kahan_sum mean, rms;
    for (const auto& r : rows) {
        if (r.cdf < s.min_cdf) {
            s.min_cdf = r.cdf;
            s.argmin_frac = r.frac_sum;
            s.ps_at_argmin = r.cdf + std::sqrt(r.df_f * r.df_g);
        }
        s.max_cdf = std::max(s.max_cdf, r.cdf);
        double dev = std::fabs(r.cdf - r.cdf_asym);
        s.max_dev = std::max(s.max_dev, dev);
        rms.add(dev * dev);
        mean.add(r.cdf);
        double root = std::sqrt(r.df_f * r.df_g);
        s.ps_max_violation =
            std::max(s.ps_max_violation, std::max((1.0 - root) - r.cdf, r.cdf - (1.0 + root)));
    }
    s.rms_dev = std::sqrt(rms.value() / static_cast<double>(rows.size()));
    s.mean_cdf = mean.value() / static_cast<double>(rows.size());
    return s;
}

double grid_argmin_of_limit(const std::vector<ScanRow>& rows) {
    double best = std::numeric_limits<double>::infinity(), arg = 0.0;
    for (const auto& r : rows)
        if (r.cdf_asym < best) {
            best = r.cdf_asym;
            arg = r.frac_sum;
        }
    return arg;
}

} // namespace

int main() {
    const unsigned threads = default_thread_count();
    const auto F512 = default_field(2, 9);
    const auto F729 = default_field(3, 6);
    const auto F256 = default_field(2, 8);

    // ---- criterion 1: Sarwate's exact shift-pair average at length 255 ----
    double grid_ps_violation = 0.0; // folded into criterion 10
    {
        auto f = m_sequence(F256, F256.alpha(), 0);
        auto g = decimate_cyclic(f, 7); // 7 is a nontrivial, nonreversing decimation mod 255
        auto st = pair_grid_stats(f, g, threads);
        grid_ps_violation = st.ps_max_violation;
        double formula = sarwate_average_formula(255);
        double rel = std::fabs(st.avg_cdf - formula) / formula;
        report(1, "shift-pair average CDF equals 1 + 2/(3l) - 1/l^2 + 1/(3l^3) at l=255", rel < 1e-6,
               "avg=" + fmt(st.avg_cdf) + " formula=" + fmt(formula) + " rel=" + fmt(rel));
    }

    // ---- criterion 2: reversing binary pairs at l=511 track the limit curve ----
    auto rev511 = scan_additive_pair(F512, -1, 511, threads);
    {
        auto s = summarize(rev511);
        bool pass = s.max_dev < 0.05 && s.rms_dev < 0.02 && std::fabs(s.min_cdf - 5.0 / 6.0) < 0.03 &&
                    std::fabs(s.max_cdf - 4.0 / 3.0) < 0.05;
        report(2, "reversing pairs at l=511: curve fit and extremes", pass,
               "max_dev=" + fmt(s.max_dev) + " rms=" + fmt(s.rms_dev) + " min=" + fmt(s.min_cdf) +
                   " max=" + fmt(s.max_cdf));
    }

    // ---- criterion 3: odd characteristic displaces the optimum by 1/2 ----
    auto rev728 = scan_additive_pair(F729, -1, 728, threads);
    {
        // The scan's limiting curve attains its minimum displaced by exactly
        // 1/2; the displacement of the grid argmin is resolved to 2/728.
        // The measured data confirm the displacement at curve scale: the
        // ternary minimum reaches the 5/6 floor near the displaced location
        // while the binary-optimal location now sits near the 4/3 ceiling.
        double arg_bin = grid_argmin_of_limit(rev511);
        double arg_tern = grid_argmin_of_limit(rev728);
        double disp = circ_dist(arg_tern - arg_bin, 0.5);
        auto st = summarize(rev728);
        double cdf_at_binary_opt = 0.0;
        for (const auto& r : rev728)
            if (circ_dist(r.frac_sum, arg_bin) <= 0.5 / 728.0 + 1e-12) cdf_at_binary_opt = r.cdf;
        bool pass = disp <= 2.0 / 728.0 && std::fabs(st.min_cdf - 5.0 / 6.0) < 0.03 && cdf_at_binary_opt > 1.2 &&
                    circ_dist(st.argmin_frac, arg_tern) < 0.1;
        report(3, "ternary reversing optimum displaced by 1/2 (mod 1)", pass,
               "limit-curve displacement=" + fmt(disp) + " measured min=" + fmt(st.min_cdf) + " at frac=" +
                   fmt(st.argmin_frac) + " cdf@binary-opt=" + fmt(cdf_at_binary_opt));
    }

    // ---- criterion 4: nontrivial nonreversing decimations stay flat at 1 ----
    {
        auto s3 = summarize(scan_additive_pair(F512, 3, 511, threads));
        auto s5 = summarize(scan_additive_pair(F729, 5, 728, threads));
        bool pass = std::max(std::fabs(s3.min_cdf - 1.0), std::fabs(s3.max_cdf - 1.0)) < 0.1 &&
                    std::max(std::fabs(s5.min_cdf - 1.0), std::fabs(s5.max_cdf - 1.0)) < 0.1 &&
                    std::fabs(s3.mean_cdf - 1.0) < 0.02 && std::fabs(s5.mean_cdf - 1.0) < 0.02;
        report(4, "d=3 at l=511 and d=5 at l=728 are flat near 1", pass,
               "d=3: worst=" + fmt(std::max(std::fabs(s3.min_cdf - 1.0), std::fabs(s3.max_cdf - 1.0))) +
                   " mean=" + fmt(s3.mean_cdf) + "; d=5: worst=" +
                   fmt(std::max(std::fabs(s5.min_cdf - 1.0), std::fabs(s5.max_cdf - 1.0))) + " mean=" + fmt(s5.mean_cdf));
    }

    // ---- criterion 5: appended / truncated reversing records ----
    auto app570 = scan_additive_pair(F512, -1, 570, threads);
    auto tru285 = scan_additive_pair(F512, -1, 285, threads);
    {
        auto sa = summarize(app570);
        auto st = summarize(tru285);
        bool pass = std::fabs(sa.min_cdf - 0.886814) < 0.05 && std::fabs(st.min_cdf - 0.649608) < 0.05;
        report(5, "appended (l=570) and truncated (l=285) optima", pass,
               "appended min=" + fmt(sa.min_cdf) + " (0.886814), truncated min=" + fmt(st.min_cdf) + " (0.649608)");
    }

    // ---- criterion 6: Legendre constructions at p=257 ----
    auto monica = scan_quadratic_pair(257, 128, 128, threads);
    auto percy = scan_quadratic_pair(257, 143, 128, threads);
    {
        double mn = std::numeric_limits<double>::infinity(), df_at = 0.0;
        for (const auto& r : monica)
            if (r.cdf < mn) {
                mn = r.cdf;
                df_at = r.df_f;
            }
        double half_df = 0.0, half_cdf = 0.0, half_best = 1e300;
        for (const auto& r : monica) {
            double d = std::min(circ_dist(r.frac_sum, 0.25), circ_dist(r.frac_sum, 0.75));
            if (d < half_best) {
                half_best = d;
                half_df = r.df_f;
                half_cdf = r.cdf;
            }
        }
        double mnp = std::numeric_limits<double>::infinity();
        for (const auto& r : percy) mnp = std::min(mnp, r.cdf);
        bool pass = std::fabs(mn - 1.0 / 3.0) < 0.05 && std::fabs(df_at - 4.0 / 3.0) < 0.05 &&
                    std::fabs(mnp - 0.299216) < 0.05 && std::fabs(half_df - 7.0 / 12.0) < 0.05 &&
                    std::fabs(half_cdf - 7.0 / 12.0) < 0.05;
        report(6, "halved and truncated Legendre pairs at p=257", pass,
               "monica min=" + fmt(mn) + " df@min=" + fmt(df_at) + " halfway df=" + fmt(half_df) + " cdf=" +
                   fmt(half_cdf) + "; percy min=" + fmt(mnp));
    }

    // ---- criterion 7: extremal constants ----
    {
        auto same = minimize_acdf(Family::Additive, Subcase::SameOrTrivial);
        auto unrel = minimize_acdf(Family::Additive, Subcase::Unrelated);
        auto quad = minimize_acdf(Family::Multiplicative, Subcase::Quadratic);
        double lt = lambda_trunc();
        double rec_conj = 1.0 / same.min_value;
        double rec_quad = 1.0 / quad.min_value;
        bool pass = std::fabs(same.min_value - 0.64960808) < 1e-8 && std::fabs(unrel.min_value - 1.0) < 1e-8 &&
                    std::fabs(quad.min_value - 0.29921617) < 1e-8 && std::fabs(same.lambda - lt) < 1e-8 &&
                    std::fabs(quad.lambda - lt) < 1e-8 && same.residual < 1e-10 && quad.residual < 1e-10 &&
                    std::fabs(lt - 0.55787469) < 1e-8 &&
                    std::fabs(cubic_max_cmf_conjugate().eval(rec_conj)) < 1e-9 &&
                    std::fabs(cubic_max_cmf_quadratic().eval(rec_quad)) < 1e-9 &&
                    std::fabs(rec_conj - 1.539389) < 1e-6 && std::fabs(rec_quad - 3.342065) < 1e-6;
        report(7, "global minima match the closed-form cubic roots", pass,
               "min_same=" + fmt(same.min_value) + " min_quad=" + fmt(quad.min_value) + " lambda=" + fmt(same.lambda) +
                   " residuals=" + fmt(same.residual) + "," + fmt(quad.residual));
    }

    // ---- criterion 8: oracle suites ----
    {
        // (a) quadruple-sum identity vs the correlation path
        std::mt19937_64 rng(2024);
        double worst_rel = 0.0;
        for (int i = 0; i < 500; ++i) {
            std::size_t len = 1 + rng() % 16;
            ComplexSequence f, g;
            for (std::size_t t = 0; t < len; ++t) {
                f.terms.push_back(std::polar(1.0, two_pi * static_cast<double>(rng() % 360) / 360.0));
                g.terms.push_back(std::polar(1.0, two_pi * static_cast<double>(rng() % 360) / 360.0));
            }
            double a = norm4_quadruple_oracle(f, g);
            double b = cross_sum_sq(f, g);
            worst_rel = std::max(worst_rel, std::fabs(a - b) / std::max(1.0, std::fabs(b)));
        }
        bool pass_a = worst_rel < 1e-6;

        // (b) quadruple counting closed forms vs brute force, all l, m <= 12
        bool pass_b = true;
        for (std::int64_t l = 1; l <= 12 && pass_b; ++l)
            for (std::int64_t m = 1; m <= 12 && pass_b; ++m)
                for (std::int64_t a = 0; a < m && pass_b; ++a) {
                    std::int64_t nb = 0, nc = 0, nd = 0, na = 0;
                    for (std::int64_t t = 0; t < l; ++t)
                        for (std::int64_t u = 0; u < l; ++u)
                            for (std::int64_t v = 0; v < l; ++v) {
                                std::int64_t w = t + u - v;
                                if (w < 0 || w >= l) continue;
                                ++na;
                                if (mod_floor(v - t - a, m) == 0) ++nb;
                                if (mod_floor(w - t - a, m) == 0) ++nc;
                                if (mod_floor(t + u - a, m) == 0) ++nd;
                            }
                    pass_b = na == count_quadruples(QuadrupleKind::A, l) &&
                             nb == count_quadruples(QuadrupleKind::B, l, m, a) &&
                             nc == count_quadruples(QuadrupleKind::C, l, m, a) &&
                             nd == count_quadruples(QuadrupleKind::D, l, m, a);
                }

        // (c) the Gauss-sum average bound, exhaustive over small fields
        bool pass_c = true;
        double worst_slack = -std::numeric_limits<double>::infinity();
        for (std::uint64_t q : std::vector<std::uint64_t>{4, 5, 7, 8, 9, 11, 13}) {
            FiniteField F = q == 4   ? default_field(2, 2)
                            : q == 8 ? default_field(2, 3)
                            : q == 9 ? default_field(3, 2)
                                     : default_field(q, 1);
            std::int64_t m = static_cast<std::int64_t>(q) - 1;
            for (std::int64_t d = -(m - 1); d <= m - 1; ++d) {
                if (std::gcd(mod_floor(d, m), m) != 1) continue;
                double bound = h_error_bound(F, d);
                for (std::int64_t a = 0; a < m; ++a)
                    for (std::int64_t b = 0; b < m; ++b)
                        for (std::int64_t c = 0; c < m; ++c)
                            for (std::int64_t e = 0; e < m; ++e) {
                                double err = std::abs(h_brute(F, a, b, c, e, d) - h_main_term(F, a, b, c, e, d));
                                worst_slack = std::max(worst_slack, err - bound);
                                if (err > bound + 1e-9) pass_c = false;
                            }
            }
        }

        // (d) Gauss-sum magnitudes and the character identities for p <= 31
        double worst_d = 0.0;
        for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
            auto F = default_field(p, 1);
            std::int64_t m = static_cast<std::int64_t>(p) - 1;
            for (std::int64_t j = 1; j < m; ++j)
                worst_d = std::max(worst_d,
                                   std::fabs(std::abs(gauss_sum(F, j, F.one())) - std::sqrt(static_cast<double>(p))));
            // orthogonality
            for (std::int64_t c = 0; c < static_cast<std::int64_t>(p); ++c) {
                cplx acc{0, 0};
                for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a)
                    acc += F.zeta_p(F.trace(F.mul(F.from_code(c), F.from_code(a))));
                worst_d = std::max(worst_d, std::abs(acc - (c == 0 ? cplx{static_cast<double>(p), 0} : cplx{0, 0})));
            }
            for (std::int64_t b = 1; b < static_cast<std::int64_t>(p); ++b) {
                cplx acc{0, 0};
                std::int64_t kb = static_cast<std::int64_t>(F.dlog(F.from_code(static_cast<std::uint64_t>(b))));
                for (std::int64_t j = 0; j < m; ++j) acc += field_char_at_exp(F, j, kb);
                worst_d = std::max(worst_d, std::abs(acc - (b == 1 ? cplx{static_cast<double>(m), 0} : cplx{0, 0})));
            }
            // Fourier expansions both ways
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) {
                auto ae = F.from_code(static_cast<std::uint64_t>(a));
                for (std::int64_t b = 1; b < static_cast<std::int64_t>(p); ++b) {
                    auto be = F.from_code(static_cast<std::uint64_t>(b));
                    cplx acc{0, 0};
                    for (std::int64_t j = 0; j < m; ++j)
                        acc += gauss_sum(F, j, ae) * std::conj(field_char_value(F, j, be));
                    worst_d = std::max(worst_d, std::abs(acc / static_cast<double>(m) -
                                                         F.zeta_p(F.trace(F.mul(ae, be)))));
                }
            }
            for (std::int64_t j = 0; j < m; ++j)
                for (std::int64_t b = 0; b < static_cast<std::int64_t>(p); ++b) {
                    auto be = F.from_code(static_cast<std::uint64_t>(b));
                    cplx acc{0, 0};
                    for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) {
                        auto ae = F.from_code(static_cast<std::uint64_t>(a));
                        acc += gauss_sum(F, j, ae) * std::conj(F.zeta_p(F.trace(F.mul(ae, be))));
                    }
                    worst_d = std::max(worst_d, std::abs(acc / static_cast<double>(p) - field_char_value(F, j, be)));
                }
        }
        bool pass_d = worst_d < 1e-9;

        report(8, "oracle suites: quadruple sum, counts, H bound, character identities",
               pass_a && pass_b && pass_c && pass_d,
               "norm4 rel=" + fmt(worst_rel) + " counts=" + (pass_b ? "ok" : "FAIL") + " H slack=" + fmt(worst_slack) +
                   " chars dev=" + fmt(worst_d));
    }

    // ---- criterion 9: random-sequence baselines ----
    {
        const std::size_t n = 10000, len = 64;
        kahan_sum s1, s2;
        for (std::size_t i = 0; i < n; ++i) {
            double df = demerit_factor(random_binary(len, 1000 + i));
            s1.add(df);
            s2.add(df * df);
        }
        double mean = s1.value() / static_cast<double>(n);
        double var = (s2.value() - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
        double se = std::sqrt(var / static_cast<double>(n));
        double target = 1.0 - 1.0 / static_cast<double>(len);
        bool pass_df = std::fabs(mean - target) < 4.0 * se;

        kahan_sum c1, c2;
        for (std::size_t i = 0; i < n; ++i) {
            auto f = random_binary(len, 500000 + 2 * i);
            auto g = random_binary(len, 500001 + 2 * i);
            double c = cross_demerit(f, g);
            c1.add(c);
            c2.add(c * c);
        }
        double cmean = c1.value() / static_cast<double>(n);
        double cvar = (c2.value() - static_cast<double>(n) * cmean * cmean) / static_cast<double>(n - 1);
        double cse = std::sqrt(cvar / static_cast<double>(n));
        bool pass_cdf = std::fabs(cmean - 1.0) < 4.0 * cse;

        report(9, "random +-1 baselines: E[DF] = 1 - 1/l and E[CDF] = 1", pass_df && pass_cdf,
               "mean_df=" + fmt(mean) + " (target " + fmt(target) + ", se " + fmt(se) + "), mean_cdf=" + fmt(cmean) +
                   " (se " + fmt(cse) + ")");
    }

    // ---- criterion 10 (remainder): scans stay inside the window; the
    //      optimal-shift reversing family approaches the bound at 7/6 ----
    {
        double viol = grid_ps_violation;
        for (const auto* rows : {&rev511, &rev728, &app570, &tru285, &monica, &percy})
            viol = std::max(viol, summarize(*rows).ps_max_violation);
        auto s = summarize(rev511);
        bool pass = viol <= 1e-9 && std::fabs(s.ps_at_argmin - 7.0 / 6.0) < 0.05;
        report(10, "Pursley-Sarwate: window holds on every evaluated pair; CDF + sqrt(DF DF) near 7/6", pass,
               "max violation=" + fmt(viol) + " sum at optimal shift=" + fmt(s.ps_at_argmin));
    }

    if (failures == 0)
        std::printf("acceptance: all criteria PASS\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
