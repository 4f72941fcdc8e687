#pragma once

#include <cstdio>
#include <fstream>

#include "corr.hpp"
#include "optim.hpp"
#include "parallel.hpp"

namespace charcorr {

// fixed-width float formatting: 12 significant digits, so CSV output is
// byte-stable and still carries full plotting fidelity
inline std::string fmt_g12(double v) {
    if (v == 0.0) v = 0.0; // fold -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

// --- generic histogram -------------------------------------------------------

struct Histogram {
    double lo = 0.0;
    double width = 0.0;
    std::vector<std::int64_t> counts; // bin i covers [lo + i*width, lo + (i+1)*width)
};

inline Histogram histogram(const std::vector<double>& values, double bin_width) {
    require(bin_width > 0.0, errc::bad_bin_width, "bin width must be positive");
    require(!values.empty(), errc::bad_args, "histogram needs at least one value");
    Histogram h;
    h.width = bin_width;
    h.lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    std::size_t nbins = static_cast<std::size_t>(std::floor((hi - h.lo) / bin_width)) + 1;
    h.counts.assign(nbins, 0);
    for (double v : values) {
        std::size_t i = static_cast<std::size_t>(std::floor((v - h.lo) / bin_width));
        if (i >= nbins) i = nbins - 1;
        ++h.counts[i];
    }
    return h;
}

// --- shift scans -------------------------------------------------------------

struct ScanRow {
    std::int64_t shift = 0;   // shift of the second sequence (additive) / of the first (quadratic)
    double frac_sum = 0.0;    // fractional sum of shifts, reduced mod 1
    double df_f = 0.0;
    double df_g = 0.0;
    double df_f_asym = 0.0;
    double cdf = 0.0;
    double cdf_asym = 0.0;
};

// f is the additive character sequence for alpha with shift 0 and the given
// length; g runs over all q-1 shifts of the sequence for alpha^d. One row per
// shift, ascending.
inline std::vector<ScanRow> scan_additive_pair(const FiniteField& F, std::int64_t d, std::size_t length,
                                               unsigned threads = 1) {
    const std::int64_t m = static_cast<std::int64_t>(F.q()) - 1;
    const auto cls = F.classify_decimation(d);
    const double lambda = static_cast<double>(length) / static_cast<double>(m);
    const ComplexSequence f = additive_sequence(F, F.alpha(), 0, length);
    const double df_f = demerit_factor(f);
    const double df_f_asym =
        acdf_additive(AsymptoticCase{Family::Additive, Subcase::SameOrTrivial, lambda, 0.0, 0.0, F.p()}) - 1.0;
    const FieldElement gen_g = F.alpha_pow(d);

    std::vector<ScanRow> rows(static_cast<std::size_t>(m));
    parallel_chunks(static_cast<std::size_t>(m), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            ComplexSequence g = additive_sequence(F, gen_g, static_cast<std::int64_t>(s), length);
            ScanRow& r = rows[s];
            r.shift = static_cast<std::int64_t>(s);
            double sum = static_cast<double>(s) / static_cast<double>(m);
            r.frac_sum = sum - std::floor(sum);
            r.df_f = df_f;
            r.df_g = demerit_factor(g);
            r.df_f_asym = df_f_asym;
            r.cdf = cross_demerit(f, g);
            AsymptoticCase c{Family::Additive, Subcase::Unrelated, lambda, 0.0, 0.0, F.p()};
            if (cls.trivial()) {
                c.subcase = Subcase::SameOrTrivial;
                c.delta = -static_cast<double>(s) / static_cast<double>(m);
            } else if (cls.reversing()) {
                c.subcase = Subcase::ConjugateOrReversing;
                c.sigma = static_cast<double>(s) / static_cast<double>(m);
            }
            r.cdf_asym = acdf_additive(c);
        }
    });
    return rows;
}

// Shifted-and-truncated Legendre pairs: for each shift r of the first
// sequence, the second is shifted to keep the difference of shifts fixed.
// Both sequences are unimodularized quadratic character sequences.
inline std::vector<ScanRow> scan_quadratic_pair(std::uint64_t p, std::size_t length, std::int64_t diff,
                                                unsigned threads = 1) {
    const MultCharSpec chi = quadratic_char(p);
    const double lambda = static_cast<double>(length) / static_cast<double>(p);
    const double delta = static_cast<double>(diff) / static_cast<double>(p);

    std::vector<ScanRow> rows(p);
    parallel_chunks(p, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t rr = lo; rr < hi; ++rr) {
            std::int64_t r = static_cast<std::int64_t>(rr);
            ComplexSequence f = unimodularize(mult_sequence(chi, r, length));
            ComplexSequence g = unimodularize(mult_sequence(chi, r - diff, length));
            ScanRow& row = rows[rr];
            row.shift = r;
            double sum = static_cast<double>(2 * r - diff) / static_cast<double>(p);
            row.frac_sum = sum - std::floor(sum);
            row.df_f = demerit_factor(f);
            row.df_g = demerit_factor(g);
            double sigma_f = static_cast<double>(2 * r) / static_cast<double>(p);
            row.df_f_asym =
                acdf_multiplicative(AsymptoticCase{Family::Multiplicative, Subcase::Quadratic, lambda, 0.0, sigma_f, p}) - 1.0;
            row.cdf = cross_demerit(f, g);
            row.cdf_asym = acdf_multiplicative(AsymptoticCase{Family::Multiplicative, Subcase::Quadratic, lambda, delta,
                                                              sum, p});
        }
    });
    return rows;
}

// --- exhaustive shift-pair grids ---------------------------------------------

struct PairGridStats {
    double avg_cdf = 0.0;
    double min_cdf = 0.0;
    double max_cdf = 0.0;
    double ps_max_violation = 0.0; // how far any pair strays outside the Pursley-Sarwate window
    std::uint64_t pairs = 0;
};

// CDF of (T^j f, T^k g) over the full shift-pair grid, with the
// Pursley-Sarwate window checked for every pair. Reduction is per-j and
// merged in index order, so the result is thread-count independent.
inline PairGridStats pair_grid_stats(const ComplexSequence& f, const ComplexSequence& g, unsigned threads = 1) {
    detail::check_equal_length(f, g);
    const std::size_t l = f.size();
    const auto pf = detail::rotation_spectra(f);
    const auto pg = detail::rotation_spectra(g);
    const auto df_f = detail::rotation_dfs(pf);
    const auto df_g = detail::rotation_dfs(pg);
    const double denom = pf.seq_energy * pg.seq_energy;

    struct Partial {
        kahan_sum sum;
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        double viol = 0.0;
    };
    std::vector<Partial> parts(l);
    parallel_chunks(l, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            Partial& part = parts[j];
            for (std::size_t k = 0; k < l; ++k) {
                double cdf = detail::RotationSpectra::pair_sum_sq(pf, j, pg, k) / denom;
                part.sum.add(cdf);
                part.mn = std::min(part.mn, cdf);
                part.mx = std::max(part.mx, cdf);
                double root = std::sqrt(df_f[j] * df_g[k]);
                part.viol = std::max(part.viol, std::max((1.0 - root) - cdf, cdf - (1.0 + root)));
            }
        }
    });
    PairGridStats st;
    st.pairs = static_cast<std::uint64_t>(l) * l;
    kahan_sum total;
    st.min_cdf = std::numeric_limits<double>::infinity();
    st.max_cdf = -std::numeric_limits<double>::infinity();
    for (const auto& part : parts) {
        total.add(part.sum.value());
        st.min_cdf = std::min(st.min_cdf, part.mn);
        st.max_cdf = std::max(st.max_cdf, part.mx);
        st.ps_max_violation = std::max(st.ps_max_violation, part.viol);
    }
    st.avg_cdf = total.value() / static_cast<double>(st.pairs);
    return st;
}

// --- the m-sequence demerit-factor census (Figures andrew / bartholomew) -----

struct MSeqCdfHistogram {
    double lo = 0.0;
    double width = 0.0;
    std::size_t nbins = 0;
    std::vector<std::int64_t> reversing;
    std::vector<std::int64_t> nonreversing;
    std::uint64_t reversing_values = 0;
    std::uint64_t nonreversing_values = 0;
    std::uint64_t dropped = 0; // values outside [lo, lo + nbins*width)
    std::size_t classes = 0;
    std::size_t class_pairs = 0;
};

namespace detail {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod_floor(a, m), r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t qt = old_r / r;
        std::int64_t tr = old_r - qt * r;
        old_r = r;
        r = tr;
        std::int64_t ts = old_s - qt * s;
        old_s = s;
        s = ts;
    }
    return mod_floor(old_s, m);
}

} // namespace detail

// CDF(T^j f_a, T^k f_b) for all ordered pairs (a, b) of distinct
// Galois-class Galois sequences and all shift pairs (j, k), binned by the
// relative-decimation class of the pair. This is the full enumeration; it is
// cheap through the rotation-spectrum tables.
inline MSeqCdfHistogram msequence_pair_cdf_histogram(const FiniteField& F, double lo = 0.6, double hi = 1.6,
                                                     double width = 0.005, unsigned threads = 1) {
    require(width > 0.0 && hi > lo, errc::bad_bin_width, "need a positive bin width and a nonempty range");
    const std::int64_t m = static_cast<std::int64_t>(F.q()) - 1;
    const auto exps = F.primitive_representative_exponents();
    const std::size_t nc = exps.size();

    std::vector<detail::RotationSpectra> spectra(nc);
    parallel_chunks(nc, threads, [&](std::size_t clo, std::size_t chi_) {
        for (std::size_t c = clo; c < chi_; ++c)
            spectra[c] = detail::rotation_spectra(m_sequence(F, F.alpha_pow(static_cast<std::int64_t>(exps[c])), 0));
    });

    MSeqCdfHistogram out;
    out.lo = lo;
    out.width = width;
    out.nbins = static_cast<std::size_t>(std::llround((hi - lo) / width));
    out.classes = nc;

    struct PairTask {
        std::size_t a, b;
        bool reversing;
    };
    std::vector<PairTask> tasks;
    for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = 0; b < nc; ++b) {
            if (a == b) continue;
            std::int64_t d = mod_floor(static_cast<std::int64_t>(exps[b]) *
                                           detail::mod_inverse(static_cast<std::int64_t>(exps[a]), m),
                                       m);
            auto cls = F.classify_decimation(d);
            if (cls.trivial()) continue; // distinct representatives never are, but keep the contract explicit
            tasks.push_back(PairTask{a, b, cls.reversing()});
        }
    out.class_pairs = tasks.size();

    struct PairHist {
        std::vector<std::int64_t> bins;
        std::uint64_t values = 0;
        std::uint64_t dropped = 0;
    };
    std::vector<PairHist> hists(tasks.size());
    const double e2 = static_cast<double>(m) * static_cast<double>(m); // unimodular: energy = length
    parallel_chunks(tasks.size(), threads, [&](std::size_t tlo, std::size_t thi) {
        for (std::size_t t = tlo; t < thi; ++t) {
            const auto& pa = spectra[tasks[t].a];
            const auto& pb = spectra[tasks[t].b];
            PairHist& h = hists[t];
            h.bins.assign(out.nbins, 0);
            const double inv_n = 1.0 / static_cast<double>(pa.n);
            for (std::size_t j = 0; j < pa.rows; ++j) {
                const double* ra = pa.row(j);
                for (std::size_t k = 0; k < pb.rows; ++k) {
                    const double* rb = pb.row(k);
                    double acc = 0.0;
                    for (std::size_t q = 0; q < pa.n; ++q) acc += ra[q] * rb[q];
                    double cdf = acc * inv_n / e2;
                    ++h.values;
                    double pos = (cdf - lo) / width;
                    if (pos < 0.0 || pos >= static_cast<double>(out.nbins)) {
                        ++h.dropped;
                        continue;
                    }
                    ++h.bins[static_cast<std::size_t>(pos)];
                }
            }
        }
    });

    out.reversing.assign(out.nbins, 0);
    out.nonreversing.assign(out.nbins, 0);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        auto& dst = tasks[t].reversing ? out.reversing : out.nonreversing;
        for (std::size_t i = 0; i < out.nbins; ++i) dst[i] += hists[t].bins[i];
        (tasks[t].reversing ? out.reversing_values : out.nonreversing_values) += hists[t].values;
        out.dropped += hists[t].dropped;
    }
    return out;
}

// --- figure reproduction -------------------------------------------------

enum class Figure { andrew, bartholomew, lester, laura, linus, lisa, percy, monica };
enum class Scale { full, reduced };

struct ExperimentSpec {
    Figure figure;
    Scale scale = Scale::full;
    std::string out_path;    // empty: do not write a file
    unsigned threads = 0;    // 0: hardware concurrency
    std::uint64_t seed = 0;  // reserved for subsampled runs; the default run is exhaustive
    bool full_enumeration = true;
};

inline Figure parse_figure(const std::string& name) {
    if (name == "andrew") return Figure::andrew;
    if (name == "bartholomew") return Figure::bartholomew;
    if (name == "lester") return Figure::lester;
    if (name == "laura") return Figure::laura;
    if (name == "linus") return Figure::linus;
    if (name == "lisa") return Figure::lisa;
    if (name == "percy") return Figure::percy;
    if (name == "monica") return Figure::monica;
    fail(errc::unknown_figure, "unknown figure '" + name + "'");
}

inline const char* figure_name(Figure f) {
    switch (f) {
        case Figure::andrew: return "andrew";
        case Figure::bartholomew: return "bartholomew";
        case Figure::lester: return "lester";
        case Figure::laura: return "laura";
        case Figure::linus: return "linus";
        case Figure::lisa: return "lisa";
        case Figure::percy: return "percy";
        case Figure::monica: return "monica";
    }
    return "?";
}

namespace detail {

struct FigureParams {
    bool histogram = false;
    bool quadratic = false;
    FiniteField field = default_field(2, 3); // placeholder, reassigned below
    std::uint64_t prime = 0;
    std::size_t length = 0;
    std::int64_t d_top = 0; // nontrivial, nonreversing decimation (scatter figures)
    std::int64_t diff = 0;  // difference of shifts (quadratic figures)
};

inline FigureParams figure_params(Figure fig, Scale scale) {
    const bool full = scale == Scale::full;
    FigureParams fp;
    switch (fig) {
        case Figure::andrew:
        case Figure::bartholomew: {
            fp.histogram = true;
            fp.field = default_field(2, full ? 8 : 7);
            fp.length = static_cast<std::size_t>(fp.field.q() - 1);
            return fp;
        }
        case Figure::lester:
        case Figure::linus:
        case Figure::lisa: {
            fp.field = default_field(2, full ? 9 : 8);
            std::size_t natural = static_cast<std::size_t>(fp.field.q() - 1);
            if (fig == Figure::lester)
                fp.length = natural;
            else if (fig == Figure::linus)
                fp.length = static_cast<std::size_t>(std::llround(static_cast<double>(natural) * lambda_app()));
            else
                fp.length = static_cast<std::size_t>(std::llround(static_cast<double>(natural) * lambda_trunc()));
            fp.d_top = full ? 3 : 7; // gcd(3, 255) = 3, so the reduced field needs another nonreversing decimation
            return fp;
        }
        case Figure::laura: {
            fp.field = default_field(3, full ? 6 : 5);
            fp.length = static_cast<std::size_t>(fp.field.q() - 1);
            fp.d_top = 5;
            return fp;
        }
        case Figure::percy:
        case Figure::monica: {
            fp.quadratic = true;
            fp.prime = full ? 257 : 127;
            fp.diff = static_cast<std::int64_t>(fp.prime / 2);
            if (fig == Figure::percy)
                fp.length = static_cast<std::size_t>(std::llround(static_cast<double>(fp.prime) * lambda_trunc()));
            else
                fp.length = static_cast<std::size_t>(fp.prime / 2);
            return fp;
        }
    }
    fail(errc::unknown_figure, "unknown figure");
}

} // namespace detail

struct ReproduceResult {
    std::string csv;
};

inline ReproduceResult reproduce(const ExperimentSpec& spec) {
    unsigned threads = spec.threads == 0 ? default_thread_count() : spec.threads;
    auto fp = detail::figure_params(spec.figure, spec.scale);
    std::ostringstream os;
    os << "# figure=" << figure_name(spec.figure) << " scale=" << (spec.scale == Scale::full ? "full" : "reduced")
       << "\n";

    if (fp.histogram) {
        os << "# field=" << fp.field.describe() << " length=" << fp.length
           << " enumeration=full bin_width=0.005 range=[0.6,1.6)\n";
        auto h = msequence_pair_cdf_histogram(fp.field, 0.6, 1.6, 0.005, threads);
        os << "# classes=" << h.classes << " ordered_pairs=" << h.class_pairs << " values="
           << (h.reversing_values + h.nonreversing_values) << " dropped=" << h.dropped << "\n";
        if (spec.figure == Figure::andrew) {
            os << "bin_lo,bin_hi,count\n";
            for (std::size_t i = 0; i < h.nbins; ++i)
                os << fmt_g12(h.lo + static_cast<double>(i) * h.width) << ","
                   << fmt_g12(h.lo + static_cast<double>(i + 1) * h.width) << "," << (h.reversing[i] + h.nonreversing[i])
                   << "\n";
        } else {
            os << "bin_lo,bin_hi,count_reversing,count_nonreversing\n";
            for (std::size_t i = 0; i < h.nbins; ++i)
                os << fmt_g12(h.lo + static_cast<double>(i) * h.width) << ","
                   << fmt_g12(h.lo + static_cast<double>(i + 1) * h.width) << "," << h.reversing[i] << ","
                   << h.nonreversing[i] << "\n";
        }
    } else if (fp.quadratic) {
        os << "# p=" << fp.prime << " length=" << fp.length << " shift_difference=" << fp.diff
           << " character=quadratic rows=" << fp.prime << "\n";
        auto rows = scan_quadratic_pair(fp.prime, fp.length, fp.diff, threads);
        os << "fractional_shift_sum,df_measured,df_asymptotic,cdf_measured,cdf_asymptotic\n";
        for (const auto& r : rows)
            os << fmt_g12(r.frac_sum) << "," << fmt_g12(r.df_f) << "," << fmt_g12(r.df_f_asym) << "," << fmt_g12(r.cdf)
               << "," << fmt_g12(r.cdf_asym) << "\n";
    } else {
        std::int64_t m = static_cast<std::int64_t>(fp.field.q()) - 1;
        os << "# field=" << fp.field.describe() << " length=" << fp.length << " decimations=" << fp.d_top << ",-1 rows="
           << 2 * m << "\n";
        os << "decimation,fractional_shift_sum,cdf_measured,cdf_asymptotic\n";
        for (std::int64_t d : {fp.d_top, std::int64_t{-1}}) {
            auto rows = scan_additive_pair(fp.field, d, fp.length, threads);
            for (const auto& r : rows)
                os << d << "," << fmt_g12(r.frac_sum) << "," << fmt_g12(r.cdf) << "," << fmt_g12(r.cdf_asym) << "\n";
        }
    }

    ReproduceResult res{os.str()};
    if (!spec.out_path.empty()) {
        std::ofstream f(spec.out_path, std::ios::binary);
        require(f.good(), errc::bad_args, "cannot open output path '" + spec.out_path + "'");
        f << res.csv;
    }
    return res;
}

} // namespace charcorr
