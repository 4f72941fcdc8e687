#pragma once

#include <optional>
#include <random>

#include "chars.hpp"

namespace charcorr {

struct SequenceMeta {
    std::string family;    // "additive", "multiplicative", "random", ...
    std::string generator; // human-readable generator / character description
    std::int64_t shift = 0;
    std::size_t length = 0;
};

// Finite complex sequence; generated terms are roots of unity or zero.
struct ComplexSequence {
    std::vector<cplx> terms;
    std::optional<SequenceMeta> meta;

    std::size_t size() const { return terms.size(); }
    const cplx& operator[](std::size_t i) const { return terms[i]; }
};

// (eps(alpha^s), eps(alpha^(s+1)), ..., eps(alpha^(s+len-1))).
// len < q-1 truncates, len > q-1 appends by periodic extension.
inline ComplexSequence additive_sequence(const FiniteField& F, const FieldElement& alpha, std::int64_t shift,
                                         std::size_t length) {
    require(length >= 1, errc::bad_args, "length must be positive");
    require(F.is_primitive(alpha), errc::not_primitive, "additive character sequences need a primitive generator");
    std::int64_t m = static_cast<std::int64_t>(F.q()) - 1;
    ComplexSequence seq;
    seq.terms.resize(length);
    if (F.has_dlog()) {
        std::int64_t e = static_cast<std::int64_t>(F.dlog(alpha));
        std::int64_t idx = mod_floor(e * mod_floor(shift, m), m);
        std::int64_t step = mod_floor(e, m);
        for (std::size_t t = 0; t < length; ++t) {
            seq.terms[t] = F.zeta_p(F.trace_of_alpha_pow(idx));
            idx += step;
            if (idx >= m) idx -= m;
        }
    } else {
        FieldElement x = F.pow(alpha, mod_floor(shift, m));
        for (std::size_t t = 0; t < length; ++t) {
            seq.terms[t] = F.zeta_p(F.trace(x));
            x = F.mul(x, alpha);
        }
    }
    seq.meta = SequenceMeta{"additive", F.describe(), shift, length};
    return seq;
}

// additive character sequence of natural length q-1
inline ComplexSequence m_sequence(const FiniteField& F, const FieldElement& alpha, std::int64_t shift) {
    return additive_sequence(F, alpha, shift, F.q() - 1);
}

// (chi(s), chi(s+1), ..., chi(s+len-1)); zeros exactly where p | s+t
inline ComplexSequence mult_sequence(const MultCharSpec& chi, std::int64_t shift, std::size_t length) {
    require(length >= 1, errc::bad_args, "length must be positive");
    require(!chi.is_trivial(), errc::trivial_character, "multiplicative character sequences need a nontrivial character");
    ComplexSequence seq;
    seq.terms.resize(length);
    for (std::size_t t = 0; t < length; ++t) seq.terms[t] = chi.eval(shift + static_cast<std::int64_t>(t));
    seq.meta = SequenceMeta{"multiplicative", "chi_" + std::to_string(chi.index()) + " mod " + std::to_string(chi.p()), shift,
                            length};
    return seq;
}

// replace zero terms by a unit-magnitude constant (default +1)
inline ComplexSequence unimodularize(const ComplexSequence& seq, cplx replacement = cplx{1.0, 0.0}) {
    require(std::abs(std::abs(replacement) - 1.0) < 1e-12, errc::non_unit_replacement,
            "replacement must have unit magnitude");
    ComplexSequence out = seq;
    for (auto& t : out.terms)
        if (t == cplx{0.0, 0.0}) t = replacement;
    return out;
}

// out_t = in_{d*t mod len}; requires gcd(d, len) = 1
inline ComplexSequence decimate_cyclic(const ComplexSequence& seq, std::int64_t d) {
    std::int64_t len = static_cast<std::int64_t>(seq.size());
    std::int64_t dm = mod_floor(d, len);
    require(std::gcd(static_cast<std::uint64_t>(dm), static_cast<std::uint64_t>(len)) == 1, errc::not_coprime,
            "decimation must be coprime to the length");
    ComplexSequence out;
    out.terms.resize(seq.size());
    out.meta = seq.meta;
    std::int64_t idx = 0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        out.terms[t] = seq.terms[idx];
        idx += dm;
        if (idx >= len) idx -= len;
    }
    return out;
}

// left cyclic shift by k places: out_t = in_{(t+k) mod len}
inline ComplexSequence cyclic_shift(const ComplexSequence& seq, std::int64_t k) {
    std::int64_t len = static_cast<std::int64_t>(seq.size());
    ComplexSequence out;
    out.terms.resize(seq.size());
    out.meta = seq.meta;
    std::int64_t idx = mod_floor(k, len);
    for (std::size_t t = 0; t < seq.size(); ++t) {
        out.terms[t] = seq.terms[idx];
        ++idx;
        if (idx >= len) idx -= len;
    }
    return out;
}

// Declarative description of a character sequence; the CLI's sequence
// strings parse into this.
struct SequenceSpec {
    enum class Family { AdditiveChar, MultChar };
    Family family = Family::AdditiveChar;
    std::optional<FiniteField> field;  // additive only
    std::int64_t generator_exp = 1;    // additive: generator = alpha^e (e coprime to q-1)
    std::uint64_t prime = 0;           // multiplicative only
    std::uint64_t char_index = 0;      // multiplicative only
    std::int64_t shift = 0;
    std::size_t length = 0;            // 0: natural length (q-1 or p)
    bool unimodular = false;           // multiplicative: replace zeros by +1

    std::uint64_t period() const {
        if (family == Family::AdditiveChar) {
            require(field.has_value(), errc::bad_spec, "additive sequence spec needs a field");
            return field->q() - 1;
        }
        return prime;
    }
    std::size_t effective_length() const { return length == 0 ? static_cast<std::size_t>(period()) : length; }
    double fractional_length() const {
        return static_cast<double>(effective_length()) / static_cast<double>(period());
    }
};

inline ComplexSequence make_sequence(const SequenceSpec& spec) {
    if (spec.family == SequenceSpec::Family::AdditiveChar) {
        require(spec.field.has_value(), errc::bad_spec, "additive sequence spec needs a field");
        const FiniteField& F = *spec.field;
        return additive_sequence(F, F.alpha_pow(spec.generator_exp), spec.shift, spec.effective_length());
    }
    MultCharSpec chi(spec.prime, spec.char_index);
    ComplexSequence s = mult_sequence(chi, spec.shift, spec.effective_length());
    return spec.unimodular ? unimodularize(s) : s;
}

// i.i.d. +-1 terms from a seeded generator; the high bit of each mt19937_64
// draw decides the sign, so results do not depend on distribution internals
inline ComplexSequence random_binary(std::size_t length, std::uint64_t seed) {
    require(length >= 1, errc::bad_args, "length must be positive");
    std::mt19937_64 rng(seed);
    ComplexSequence seq;
    seq.terms.resize(length);
    for (auto& t : seq.terms) t = (rng() >> 63) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    seq.meta = SequenceMeta{"random", "mt19937_64 seed " + std::to_string(seed), 0, length};
    return seq;
}

} // namespace charcorr
