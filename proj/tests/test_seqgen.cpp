#include "charcorr/seqgen.hpp"

#include "test_util.hpp"

using namespace charcorr;
using Catch::Approx;
using cctest::code_of;

namespace {
constexpr double tol = 1e-12;

bool close(cplx a, cplx b) { return std::abs(a - b) < tol; }

bool same_terms(const ComplexSequence& a, const ComplexSequence& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i])) return false;
    return true;
}

bool equal_up_to_cyclic_shift(const ComplexSequence& a, const ComplexSequence& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (same_terms(cyclic_shift(a, static_cast<std::int64_t>(k)), b)) return true;
    return false;
}
} // namespace

TEST_CASE("additive sequences on F_4", "[seqgen]") {
    auto F4 = make_field(2, {1, 1, 1});
    auto s0 = additive_sequence(F4, F4.gen_x(), 0, 3);
    REQUIRE(s0.size() == 3);
    CHECK(close(s0[0], {1, 0}));
    CHECK(close(s0[1], {-1, 0}));
    CHECK(close(s0[2], {-1, 0}));
    CHECK(same_terms(additive_sequence(F4, F4.gen_x(), 3, 3), s0)); // exponent period q-1

    CHECK(code_of([&] { additive_sequence(F4, F4.one(), 0, 3); }) == errc::not_primitive);
    CHECK(code_of([&] { additive_sequence(F4, F4.gen_x(), 0, 0); }) == errc::bad_args);
}

TEST_CASE("m-sequences", "[seqgen]") {
    auto F512 = default_field(2, 9);
    auto s = m_sequence(F512, F512.alpha(), 0);
    CHECK(s.size() == 511);
    for (const auto& t : s.terms) CHECK((close(t, {1, 0}) || close(t, {-1, 0})));

    // F_8: trace balance gives three +1 terms and four -1 terms
    auto F8 = default_field(2, 3);
    for (const auto& a : F8.primitive_representatives()) {
        auto ms = m_sequence(F8, a, 0);
        int plus = 0;
        for (const auto& t : ms.terms)
            if (close(t, {1, 0})) ++plus;
        CHECK(plus == 3);
        CHECK(ms.size() == 7);
    }

    // shift q-1 is the identity
    CHECK(same_terms(m_sequence(F8, F8.alpha(), 7), m_sequence(F8, F8.alpha(), 0)));
    // Frobenius: the Galois sequence of alpha^p is that of alpha
    CHECK(same_terms(m_sequence(F512, F512.alpha_pow(2), 0), m_sequence(F512, F512.alpha(), 0)));
    auto F729 = default_field(3, 6);
    CHECK(same_terms(m_sequence(F729, F729.alpha_pow(3), 0), m_sequence(F729, F729.alpha(), 0)));
}

TEST_CASE("truncation and appending are periodic windowing", "[seqgen]") {
    auto F = default_field(2, 9);
    auto natural = m_sequence(F, F.alpha(), 0);
    auto appended = additive_sequence(F, F.alpha(), 0, 570);
    for (std::size_t t = 0; t < 570; ++t) CHECK(close(appended[t], natural[t % 511]));
    auto truncated = additive_sequence(F, F.alpha(), 0, 285);
    for (std::size_t t = 0; t < 285; ++t) CHECK(close(truncated[t], natural[t]));
}

TEST_CASE("multiplicative character sequences", "[seqgen]") {
    auto chi7 = quadratic_char(7);
    auto s = mult_sequence(chi7, 0, 7);
    const double want[7] = {0, 1, 1, -1, 1, -1, -1};
    for (int i = 0; i < 7; ++i) CHECK(close(s[static_cast<std::size_t>(i)], {want[i], 0}));
    CHECK(same_terms(mult_sequence(chi7, 7, 7), s));

    CHECK(code_of([] { mult_sequence(MultCharSpec(7, 0), 0, 7); }) == errc::trivial_character);

    // the truncated base sequence for the p = 257 experiments
    auto leg = mult_sequence(quadratic_char(257), 0, 143);
    CHECK(leg.size() == 143);
    int zeros = 0;
    for (const auto& t : leg.terms)
        if (close(t, {0, 0})) ++zeros;
    CHECK(zeros == 1); // only chi(0)
}

TEST_CASE("zero count of multiplicative sequences", "[seqgen]") {
    for (std::uint64_t p : {7, 13, 31}) {
        auto chi = quadratic_char(p);
        for (std::int64_t shift : {-9, -1, 0, 1, 5, 29}) {
            for (std::size_t len : {3u, 7u, 20u, 50u}) {
                auto s = mult_sequence(chi, shift, len);
                std::size_t zeros = 0;
                for (const auto& t : s.terms)
                    if (close(t, {0, 0})) ++zeros;
                std::size_t expect = 0;
                for (std::size_t t = 0; t < len; ++t)
                    if (mod_floor(shift + static_cast<std::int64_t>(t), static_cast<std::int64_t>(p)) == 0) ++expect;
                CHECK(zeros == expect);
                CHECK(zeros <= (len + p - 1) / p);
            }
        }
    }
}

TEST_CASE("unimodularization", "[seqgen]") {
    auto chi7 = quadratic_char(7);
    auto leg = unimodularize(mult_sequence(chi7, 0, 7));
    const double want[7] = {1, 1, 1, -1, 1, -1, -1};
    for (int i = 0; i < 7; ++i) CHECK(close(leg[static_cast<std::size_t>(i)], {want[i], 0}));

    auto already = unimodularize(leg, {-1, 0});
    CHECK(same_terms(already, leg));

    ComplexSequence zz{{cplx{0, 0}, cplx{0, 0}}, {}};
    auto repl = unimodularize(zz, {-1, 0});
    CHECK(close(repl[0], {-1, 0}));
    CHECK(close(repl[1], {-1, 0}));

    CHECK(code_of([&] { unimodularize(zz, {0.5, 0}); }) == errc::non_unit_replacement);
}

TEST_CASE("decimation and cyclic shift", "[seqgen]") {
    ComplexSequence abc{{cplx{1, 0}, cplx{2, 0}, cplx{3, 0}}, {}};
    auto dec = decimate_cyclic(abc, 2);
    CHECK(close(dec[0], {1, 0}));
    CHECK(close(dec[1], {3, 0}));
    CHECK(close(dec[2], {2, 0}));
    auto sh = cyclic_shift(abc, 1);
    CHECK(close(sh[0], {2, 0}));
    CHECK(close(sh[1], {3, 0}));
    CHECK(close(sh[2], {1, 0}));
    CHECK(code_of([&] { decimate_cyclic(ComplexSequence{{cplx{1, 0}, cplx{1, 0}}, {}}, 2); }) == errc::not_coprime);

    // decimating a Galois sequence by d gives the Galois sequence of alpha^d
    auto F4 = make_field(2, {1, 1, 1});
    for (std::int64_t d : {1, 2}) {
        auto lhs = decimate_cyclic(m_sequence(F4, F4.gen_x(), 0), d);
        auto rhs = m_sequence(F4, F4.pow(F4.gen_x(), d), 0);
        CHECK(same_terms(lhs, rhs));
    }
}

TEST_CASE("decimation/generator consistency on F_512", "[seqgen]") {
    auto F = default_field(2, 9);
    auto galois = m_sequence(F, F.alpha(), 0);
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 20) {
        std::int64_t d = static_cast<std::int64_t>(rng() % 510) + 1;
        if (std::gcd(d, std::int64_t{511}) != 1) continue;
        ++done;
        CHECK(same_terms(decimate_cyclic(galois, d), m_sequence(F, F.alpha_pow(d), 0)));
        // decimating a shifted m-sequence lands in the same class up to a shift
        auto shifted = m_sequence(F, F.alpha(), 37);
        CHECK(equal_up_to_cyclic_shift(decimate_cyclic(shifted, d), m_sequence(F, F.alpha_pow(d), 0)));
    }
}

TEST_CASE("sequence specs build the sequences they describe", "[seqgen]") {
    SequenceSpec add;
    add.family = SequenceSpec::Family::AdditiveChar;
    add.field = default_field(2, 9);
    add.generator_exp = -1;
    add.shift = 12;
    add.length = 285;
    CHECK(add.period() == 511);
    CHECK(add.fractional_length() == Approx(285.0 / 511.0));
    CHECK(same_terms(make_sequence(add), additive_sequence(*add.field, add.field->alpha_pow(-1), 12, 285)));

    SequenceSpec mult;
    mult.family = SequenceSpec::Family::MultChar;
    mult.prime = 257;
    mult.char_index = 128;
    mult.length = 143;
    mult.unimodular = true;
    CHECK(mult.fractional_length() == Approx(143.0 / 257.0));
    CHECK(same_terms(make_sequence(mult), unimodularize(mult_sequence(quadratic_char(257), 0, 143))));

    SequenceSpec natural = mult;
    natural.length = 0;
    CHECK(make_sequence(natural).size() == 257);
    CHECK(natural.fractional_length() == Approx(1.0));
}

TEST_CASE("random binary sequences are reproducible", "[seqgen]") {
    auto a = random_binary(64, 42);
    auto b = random_binary(64, 42);
    auto c = random_binary(64, 43);
    CHECK(same_terms(a, b));
    CHECK_FALSE(same_terms(a, c));
    for (const auto& t : a.terms) CHECK((close(t, {1, 0}) || close(t, {-1, 0})));
}
