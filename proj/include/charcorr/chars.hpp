#pragma once

#include "gf.hpp"

namespace charcorr {

// Additive character eps_a : x -> eps(a*x) = exp(2*pi*i*Tr(a*x)/p).
struct AdditiveCharSpec {
    FiniteField field;
    FieldElement a;

    static AdditiveCharSpec canonical(const FiniteField& F) { return AdditiveCharSpec{F, F.one()}; }
    bool is_trivial() const { return field.is_zero(a); }
};

inline cplx additive_char(const AdditiveCharSpec& spec, const FieldElement& x) {
    return spec.field.zeta_p(spec.field.trace(spec.field.mul(spec.a, x)));
}

// Multiplicative character chi_j of the prime field F_p, indexed against the
// smallest positive primitive root g_p: chi_j(g_p^k) = exp(2*pi*i*j*k/(p-1)),
// extended by chi(0) = 0.
class MultCharSpec {
  public:
    MultCharSpec(std::uint64_t p, std::uint64_t j) : p_(p), j_(0) {
        require(is_prime_u64(p) && p >= 3, errc::not_prime, "multiplicative characters need an odd prime field");
        j_ = j % (p - 1);
        // smallest positive primitive root
        auto factors = factorize(p - 1);
        for (std::uint64_t g = 2; g < p; ++g) {
            bool prim = true;
            for (auto [r, e] : factors) {
                (void)e;
                if (pow_mod_u64(g, (p - 1) / r, p) == 1) {
                    prim = false;
                    break;
                }
            }
            if (prim) {
                root_ = g;
                break;
            }
        }
        dlog_.assign(p_, -1);
        std::uint64_t cur = 1;
        for (std::uint64_t k = 0; k < p_ - 1; ++k) {
            dlog_[cur] = static_cast<std::int64_t>(k);
            cur = mul_mod_u64(cur, root_, p_);
        }
    }

    std::uint64_t p() const { return p_; }
    std::uint64_t index() const { return j_; }
    std::uint64_t primitive_root() const { return root_; }
    std::uint64_t order() const { return (p_ - 1) / std::gcd(j_, p_ - 1); }
    bool is_trivial() const { return j_ == 0; }
    bool is_quadratic() const { return order() == 2; }

    MultCharSpec conj() const { return with_index(mod_floor(-static_cast<std::int64_t>(j_), static_cast<std::int64_t>(p_ - 1))); }
    MultCharSpec with_index(std::uint64_t j) const {
        MultCharSpec c = *this;
        c.j_ = j % (p_ - 1);
        return c;
    }

    std::int64_t dlog(std::int64_t x) const { return dlog_[mod_floor(x, static_cast<std::int64_t>(p_))]; }

    cplx eval(std::int64_t x) const {
        std::int64_t k = dlog_[mod_floor(x, static_cast<std::int64_t>(p_))];
        if (k < 0) return {0.0, 0.0};
        return unit_root(static_cast<std::int64_t>(j_) * k, static_cast<std::int64_t>(p_ - 1));
    }

  private:
    std::uint64_t p_;
    std::uint64_t j_;
    std::uint64_t root_ = 0;
    std::vector<std::int64_t> dlog_; // residue -> exponent of g_p, -1 for 0
};

inline MultCharSpec quadratic_char(std::uint64_t p) { return MultCharSpec(p, (p - 1) / 2); }

inline cplx mult_char_eval(const MultCharSpec& chi, std::int64_t x) { return chi.eval(x); }

// G_a(chi) = sum over x in F_p^* of eps(a*x)*chi(x), by direct summation.
inline cplx gauss_sum(const MultCharSpec& chi, std::int64_t a) {
    std::int64_t p = static_cast<std::int64_t>(chi.p());
    cplx acc{0.0, 0.0};
    for (std::int64_t x = 1; x < p; ++x) acc += unit_root(a * x, p) * chi.eval(x);
    return acc;
}

// --- multiplicative characters of a general finite field --------------------
//
// The character group of F_q^* is cyclic of order q-1; characters are indexed
// against the field's designated primitive element alpha:
// chi_j(alpha^k) = exp(2*pi*i*j*k/(q-1)), chi_j(0) = 0.

inline cplx field_char_at_exp(const FiniteField& F, std::int64_t j, std::int64_t k) {
    return unit_root(j * k, static_cast<std::int64_t>(F.q() - 1));
}

inline cplx field_char_value(const FiniteField& F, std::int64_t j, const FieldElement& x) {
    if (F.is_zero(x)) return {0.0, 0.0};
    return field_char_at_exp(F, j, static_cast<std::int64_t>(F.dlog(x)));
}

// G_a(chi_j) over the field, direct summation
inline cplx gauss_sum(const FiniteField& F, std::int64_t j, const FieldElement& a) {
    std::int64_t m = static_cast<std::int64_t>(F.q() - 1);
    cplx acc{0.0, 0.0};
    for (std::int64_t k = 0; k < m; ++k) {
        std::uint32_t tr = F.trace(F.mul(a, F.alpha_pow(k)));
        acc += F.zeta_p(tr) * field_char_at_exp(F, j, k);
    }
    return acc;
}

// All of G(chi_j) = G_1(chi_j) for j in [0, q-1), computed once per field and
// then shared; safe for concurrent readers.
inline const std::vector<cplx>& gauss_table(const FiniteField& F) {
    const detail::FieldData* d = F.data();
    std::call_once(d->gauss_once, [&]() {
        std::uint64_t m = F.q() - 1;
        std::vector<cplx> table(m);
        for (std::uint64_t j = 0; j < m; ++j) {
            cplx acc{0.0, 0.0};
            for (std::uint64_t k = 0; k < m; ++k)
                acc += F.zeta_p(F.trace_of_alpha_pow(static_cast<std::int64_t>(k))) *
                       field_char_at_exp(F, static_cast<std::int64_t>(j), static_cast<std::int64_t>(k));
            table[j] = acc;
        }
        d->gauss_table = std::move(table);
    });
    return d->gauss_table;
}

// character spec text: "mult:p=<p>,j=<j>" or "add:a=<exponent of alpha>"
struct CharSpecText {
    bool multiplicative;
    std::uint64_t p = 0; // mult only
    std::uint64_t j = 0; // mult only
    std::int64_t a_exp = 0; // add only
};

inline CharSpecText parse_char_spec(const std::string& text) {
    auto bad = [&](const std::string& why) { fail(errc::bad_spec, "bad character spec '" + text + "': " + why); };
    CharSpecText out{};
    if (text.rfind("mult:", 0) == 0) {
        out.multiplicative = true;
        std::string body = text.substr(5);
        std::stringstream ss(body);
        std::string tok;
        bool saw_p = false, saw_j = false;
        try {
            while (std::getline(ss, tok, ',')) {
                if (tok.rfind("p=", 0) == 0) {
                    out.p = std::stoull(tok.substr(2));
                    saw_p = true;
                } else if (tok.rfind("j=", 0) == 0) {
                    out.j = std::stoull(tok.substr(2));
                    saw_j = true;
                } else {
                    bad("unknown token '" + tok + "'");
                }
            }
        } catch (const error&) {
            throw;
        } catch (const std::exception&) {
            bad("cannot parse number");
        }
        if (!saw_p || !saw_j) bad("need p=<p>,j=<j>");
    } else if (text.rfind("add:", 0) == 0) {
        out.multiplicative = false;
        std::string body = text.substr(4);
        if (body.rfind("a=", 0) != 0) bad("need a=<exponent of alpha>");
        try {
            out.a_exp = std::stoll(body.substr(2));
        } catch (const std::exception&) {
            bad("cannot parse number");
        }
    } else {
        bad("must start with 'mult:' or 'add:'");
    }
    return out;
}

} // namespace charcorr
