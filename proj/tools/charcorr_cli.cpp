// Command-line front end: sequence generation, correlation profiles, demerit
// metrics, shift scans, asymptotic formulae, extremal constants, and the
// stock experiment reproductions, all emitting deterministic CSV.

#include <CLI11.hpp>
#include <iostream>

#include "charcorr/charcorr.hpp"

namespace cc = charcorr;

namespace {

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    cc::require(f.good(), cc::errc::bad_args, "cannot open output path '" + out_path + "'");
    f << text;
}

struct PairOptions {
    std::string field_spec;
    std::string char_spec;
    std::int64_t d = 1;
    std::int64_t j2 = -1; // second character index; -1: same as first
    std::int64_t shift1 = 0;
    std::int64_t shift = 0;
    std::int64_t len = 0; // 0: natural length
    bool unimodular = false;
};

void add_pair_flags(CLI::App* cmd, PairOptions& po, bool with_g_shift) {
    cmd->add_option("--field", po.field_spec, "field spec 'p=<int>; modulus=<c0,c1,...,cn>' (additive pair)");
    cmd->add_option("--char", po.char_spec, "character spec 'mult:p=<p>,j=<j>' (multiplicative pair)");
    cmd->add_option("--d", po.d, "relative decimation of the second sequence (additive pair)");
    cmd->add_option("--j2", po.j2, "character index of the second sequence (multiplicative pair; default: same)");
    cmd->add_option("--shift1", po.shift1, "shift of the first sequence");
    if (with_g_shift) cmd->add_option("--shift", po.shift, "shift of the second sequence");
    cmd->add_option("--len", po.len, "sequence length (default: natural length)");
    cmd->add_flag("--unimodular", po.unimodular, "unimodularize multiplicative sequences (zeros -> +1)");
}

struct PairSpecs {
    cc::SequenceSpec f, g;
};

PairSpecs pair_specs(const PairOptions& po) {
    PairSpecs ps;
    if (!po.char_spec.empty()) {
        auto cs = cc::parse_char_spec(po.char_spec);
        cc::require(cs.multiplicative, cc::errc::bad_spec, "pair subcommands take a 'mult:' character spec");
        ps.f.family = ps.g.family = cc::SequenceSpec::Family::MultChar;
        ps.f.prime = ps.g.prime = cs.p;
        ps.f.char_index = cs.j;
        ps.g.char_index = po.j2 < 0 ? cs.j : static_cast<std::uint64_t>(po.j2);
        ps.f.unimodular = ps.g.unimodular = po.unimodular;
    } else {
        cc::require(!po.field_spec.empty(), cc::errc::bad_spec, "need --field or --char to define the pair");
        cc::FiniteField F = cc::parse_field_spec(po.field_spec);
        ps.f.family = ps.g.family = cc::SequenceSpec::Family::AdditiveChar;
        ps.f.field = ps.g.field = F;
        ps.f.generator_exp = 1;
        ps.g.generator_exp = po.d;
    }
    if (po.len > 0) ps.f.length = ps.g.length = static_cast<std::size_t>(po.len);
    ps.f.shift = po.shift1;
    ps.g.shift = po.shift;
    return ps;
}

struct Pair {
    cc::ComplexSequence f, g;
    std::uint64_t period = 0; // q-1 (additive) or p (multiplicative)
};

Pair build_pair(const PairOptions& po) {
    auto ps = pair_specs(po);
    return Pair{cc::make_sequence(ps.f), cc::make_sequence(ps.g), ps.f.period()};
}

int run(int argc, char** argv) {
    CLI::App app{"finite-field character sequences and their aperiodic correlation"};
    app.require_subcommand(1);

    // --- gen ---
    PairOptions gen_po;
    bool gen_random = false;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate one sequence as 're,im' CSV");
    add_pair_flags(gen, gen_po, true);
    gen->add_flag("--random", gen_random, "seeded random +-1 sequence instead of a character sequence");
    gen->add_option("--seed", gen_seed, "seed for --random");
    gen->add_option("--out", gen_out, "output path (default: stdout)");

    // --- corr ---
    PairOptions corr_po;
    std::string corr_out;
    auto* corr = app.add_subcommand("corr", "crosscorrelation profile of a pair as 's,re,im,abs2' CSV");
    add_pair_flags(corr, corr_po, true);
    corr->add_option("--out", corr_out, "output path (default: stdout)");

    // --- metrics ---
    PairOptions met_po;
    std::string met_out;
    auto* met = app.add_subcommand("metrics", "demerit factors of a pair: df_f,df_g,cdf,cmf,ps_lower,ps_upper");
    add_pair_flags(met, met_po, true);
    met->add_option("--out", met_out, "output path (default: stdout)");

    // --- scan ---
    PairOptions scan_po;
    std::string scan_out;
    unsigned scan_threads = 0;
    auto* scan = app.add_subcommand("scan", "sweep the second sequence's shift over the whole period");
    add_pair_flags(scan, scan_po, false);
    scan->add_option("--threads", scan_threads, "worker threads (0: hardware)");
    scan->add_option("--out", scan_out, "output path (default: stdout)");

    // --- asymptote ---
    std::string as_family = "additive", as_subcase;
    double as_lambda = 1.0, as_delta = 0.0, as_sigma = 0.0;
    std::uint64_t as_p = 2;
    auto* as = app.add_subcommand("asymptote", "closed-form limiting crosscorrelation demerit factor");
    as->add_option("--family", as_family, "additive | multiplicative")->required();
    as->add_option("--subcase", as_subcase, "same-or-trivial | conjugate-or-reversing | unrelated | quadratic")->required();
    as->add_option("--lambda", as_lambda, "limiting fractional length")->required();
    as->add_option("--delta", as_delta, "limiting fractional difference of shifts");
    as->add_option("--sigma", as_sigma, "limiting fractional sum of shifts");
    as->add_option("--p", as_p, "characteristic (decides the odd-p shift in the additive reversing case)");

    // --- optimize ---
    std::string opt_case, opt_family = "";
    auto* opt = app.add_subcommand("optimize", "global minimum of a limiting demerit formula");
    opt->add_option("--case", opt_case, "same-or-trivial | conjugate-or-reversing | unrelated | quadratic")->required();
    opt->add_option("--family", opt_family, "additive | multiplicative (default: by case)");

    // --- reproduce ---
    std::string rep_figure, rep_scale = "full", rep_out;
    unsigned rep_threads = 0;
    std::uint64_t rep_seed = 0;
    bool rep_full = false;
    auto* rep = app.add_subcommand("reproduce", "rebuild a stock experiment as deterministic CSV");
    rep->add_option("--figure", rep_figure,
                    "andrew | bartholomew | lester | laura | linus | lisa | percy | monica")->required();
    rep->add_option("--scale", rep_scale, "full | reduced");
    rep->add_option("--out", rep_out, "output path (default: stdout)");
    rep->add_option("--threads", rep_threads, "worker threads (0: hardware)");
    rep->add_option("--seed", rep_seed, "accepted for compatibility; runs are exhaustive");
    rep->add_flag("--full", rep_full, "force the full enumeration (already the default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        cc::ComplexSequence seq;
        if (gen_random) {
            cc::require(gen_po.len > 0, cc::errc::bad_args, "--random needs --len");
            seq = cc::random_binary(static_cast<std::size_t>(gen_po.len), gen_seed);
        } else if (!gen_po.char_spec.empty() && gen_po.char_spec.rfind("mult:", 0) == 0) {
            auto cs = cc::parse_char_spec(gen_po.char_spec);
            cc::MultCharSpec chi(cs.p, cs.j);
            std::size_t len = gen_po.len > 0 ? static_cast<std::size_t>(gen_po.len) : static_cast<std::size_t>(cs.p);
            seq = cc::mult_sequence(chi, gen_po.shift, len);
            if (gen_po.unimodular) seq = cc::unimodularize(seq);
        } else {
            cc::require(!gen_po.field_spec.empty(), cc::errc::bad_spec, "gen needs --field, a 'mult:' --char, or --random");
            cc::FiniteField F = cc::parse_field_spec(gen_po.field_spec);
            std::int64_t a_exp = 0;
            if (!gen_po.char_spec.empty()) {
                auto cs = cc::parse_char_spec(gen_po.char_spec);
                cc::require(!cs.multiplicative, cc::errc::bad_spec, "additive gen takes an 'add:' character spec");
                a_exp = cs.a_exp;
            }
            std::size_t len = gen_po.len > 0 ? static_cast<std::size_t>(gen_po.len) : static_cast<std::size_t>(F.q() - 1);
            std::int64_t m = static_cast<std::int64_t>(F.q()) - 1;
            std::int64_t dm = cc::mod_floor(gen_po.d, m);
            cc::require(std::gcd(static_cast<std::uint64_t>(dm), static_cast<std::uint64_t>(m)) == 1, cc::errc::not_coprime,
                        "--d must be coprime to q-1");
            // term t = eps(alpha^a_exp * (alpha^d)^(shift+t))
            seq.terms.resize(len);
            for (std::size_t t = 0; t < len; ++t) {
                std::int64_t k = a_exp + gen_po.d * (gen_po.shift + static_cast<std::int64_t>(t));
                seq.terms[t] = F.zeta_p(F.trace_of_alpha_pow(k));
            }
        }
        std::ostringstream os;
        os << "re,im\n";
        for (const auto& t : seq.terms) os << cc::fmt_g12(t.real()) << "," << cc::fmt_g12(t.imag()) << "\n";
        write_text(gen_out, os.str());
        return 0;
    }

    if (corr->parsed()) {
        auto pr = build_pair(corr_po);
        auto prof = cc::crosscorrelate_fast(pr.f, pr.g);
        std::ostringstream os;
        os << "s,re,im,abs2\n";
        for (std::int64_t s = prof.min_shift(); s <= prof.max_shift(); ++s) {
            cc::cplx v = prof.at(s);
            os << s << "," << cc::fmt_g12(v.real()) << "," << cc::fmt_g12(v.imag()) << "," << cc::fmt_g12(std::norm(v))
               << "\n";
        }
        write_text(corr_out, os.str());
        return 0;
    }

    if (met->parsed()) {
        auto pr = build_pair(met_po);
        auto r = cc::demerit_report(pr.f, pr.g);
        std::ostringstream os;
        os << "df_f,df_g,cdf,cmf,ps_lower,ps_upper\n"
           << cc::fmt_g12(r.df_f) << "," << cc::fmt_g12(r.df_g) << "," << cc::fmt_g12(r.cdf) << "," << cc::fmt_g12(r.cmf)
           << "," << cc::fmt_g12(r.ps_lower) << "," << cc::fmt_g12(r.ps_upper) << "\n";
        write_text(met_out, os.str());
        return 0;
    }

    if (scan->parsed()) {
        auto ps = pair_specs(scan_po);
        const std::uint64_t period = ps.f.period();
        const auto f = cc::make_sequence(ps.f);
        const double df_f = cc::demerit_factor(f);
        struct Row {
            double df_g, cdf;
        };
        std::vector<Row> rows(period);
        cc::parallel_chunks(period, scan_threads, [&](std::size_t lo, std::size_t hi) {
            cc::SequenceSpec gs = ps.g;
            for (std::size_t s = lo; s < hi; ++s) {
                gs.shift = scan_po.shift + static_cast<std::int64_t>(s);
                auto g = cc::make_sequence(gs);
                rows[s] = Row{cc::demerit_factor(g), cc::cross_demerit(f, g)};
            }
        });
        std::ostringstream os;
        os << "shift,fractional_shift_sum,df_f,df_g,cdf\n";
        for (std::uint64_t s = 0; s < period; ++s) {
            double sum = static_cast<double>(scan_po.shift1 + scan_po.shift + static_cast<std::int64_t>(s)) /
                         static_cast<double>(period);
            os << s << "," << cc::fmt_g12(sum - std::floor(sum)) << "," << cc::fmt_g12(df_f) << ","
               << cc::fmt_g12(rows[s].df_g) << "," << cc::fmt_g12(rows[s].cdf) << "\n";
        }
        write_text(scan_out, os.str());
        return 0;
    }

    if (as->parsed()) {
        cc::AsymptoticCase c{};
        if (as_family == "additive" || as_family == "add")
            c.family = cc::Family::Additive;
        else if (as_family == "multiplicative" || as_family == "mult")
            c.family = cc::Family::Multiplicative;
        else
            cc::fail(cc::errc::bad_case, "unknown family '" + as_family + "'");
        if (as_subcase == "same-or-trivial" || as_subcase == "same" || as_subcase == "trivial")
            c.subcase = cc::Subcase::SameOrTrivial;
        else if (as_subcase == "conjugate-or-reversing" || as_subcase == "conjugate" || as_subcase == "reversing")
            c.subcase = cc::Subcase::ConjugateOrReversing;
        else if (as_subcase == "unrelated")
            c.subcase = cc::Subcase::Unrelated;
        else if (as_subcase == "quadratic" || as_subcase == "quad")
            c.subcase = cc::Subcase::Quadratic;
        else
            cc::fail(cc::errc::bad_case, "unknown subcase '" + as_subcase + "'");
        c.lambda = as_lambda;
        c.delta = as_delta;
        c.sigma = as_sigma;
        c.p = as_p;
        std::cout << cc::fmt_g12(cc::acdf(c)) << "\n";
        return 0;
    }

    if (opt->parsed()) {
        cc::Subcase sc;
        if (opt_case == "same-or-trivial" || opt_case == "same" || opt_case == "trivial")
            sc = cc::Subcase::SameOrTrivial;
        else if (opt_case == "conjugate-or-reversing" || opt_case == "conjugate" || opt_case == "reversing")
            sc = cc::Subcase::ConjugateOrReversing;
        else if (opt_case == "unrelated")
            sc = cc::Subcase::Unrelated;
        else if (opt_case == "quadratic" || opt_case == "quad")
            sc = cc::Subcase::Quadratic;
        else
            cc::fail(cc::errc::bad_case, "unknown case '" + opt_case + "'");
        cc::Family fam = sc == cc::Subcase::Quadratic ? cc::Family::Multiplicative : cc::Family::Additive;
        if (opt_family == "additive" || opt_family == "add")
            fam = cc::Family::Additive;
        else if (opt_family == "multiplicative" || opt_family == "mult")
            fam = cc::Family::Multiplicative;
        else if (!opt_family.empty())
            cc::fail(cc::errc::bad_case, "unknown family '" + opt_family + "'");
        auto r = cc::minimize_acdf(fam, sc);
        std::cout << "case: " << opt_case << "\n";
        if (r.lambda_is_interval)
            std::cout << "argmin_lambda: (0, 1]\n";
        else
            std::cout << "argmin_lambda: " << cc::fmt_g12(r.lambda) << "\n";
        if (!std::isnan(r.delta)) std::cout << "argmin_delta: " << cc::fmt_g12(r.delta) << " (mod 1)\n";
        if (!std::isnan(r.sigma)) std::cout << "argmin_sigma: " << cc::fmt_g12(r.sigma) << " (mod 1)\n";
        std::cout << "min_value: " << cc::fmt_g12(r.min_value) << "\n"
                  << "matched_cubic: " << r.cubic << "\n"
                  << "matched_root: " << cc::fmt_g12(r.matched_root) << "\n"
                  << "residual: " << cc::fmt_g12(r.residual) << "\n";
        return 0;
    }

    if (rep->parsed()) {
        cc::ExperimentSpec spec{};
        spec.figure = cc::parse_figure(rep_figure);
        if (rep_scale == "full")
            spec.scale = cc::Scale::full;
        else if (rep_scale == "reduced")
            spec.scale = cc::Scale::reduced;
        else
            cc::fail(cc::errc::bad_args, "unknown scale '" + rep_scale + "'");
        spec.out_path = rep_out;
        spec.threads = rep_threads;
        spec.seed = rep_seed;
        spec.full_enumeration = true;
        auto res = cc::reproduce(spec);
        if (rep_out.empty()) std::cout << res.csv;
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
