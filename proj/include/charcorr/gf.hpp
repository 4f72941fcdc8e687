#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "common.hpp"

namespace charcorr {

// Element of GF(p^n) in polynomial-basis coordinates, ascending powers,
// each coordinate in [0, p).
struct FieldElement {
    std::vector<std::uint32_t> coeffs;
    bool operator==(const FieldElement& o) const { return coeffs == o.coeffs; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

struct DecimationClass {
    enum class Kind { Trivial, Reversing, Other };
    Kind kind;
    std::int64_t d;
    bool trivial() const { return kind == Kind::Trivial; }
    bool reversing() const { return kind == Kind::Reversing; }
};

namespace detail {

// dense coefficient polynomials over Z_p, ascending, used only for field
// construction (irreducibility test, table building)
using poly = std::vector<std::uint32_t>;

inline poly poly_trim(poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline poly poly_mul_mod(const poly& a, const poly& b, const poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    // reduce by monic f of degree n
    std::size_t n = f.size() - 1;
    for (std::size_t i = prod.size(); i-- > n;) {
        std::uint64_t c = prod[i] % p;
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t sub = (c * f[j]) % p;
            prod[i - n + j] = (prod[i - n + j] + p - sub) % p;
        }
    }
    poly out(n, 0);
    for (std::size_t i = 0; i < n && i < prod.size(); ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
    return poly_trim(out);
}

inline poly poly_pow_mod(poly base, std::uint64_t e, const poly& f, std::uint64_t p) {
    poly r{1};
    while (e) {
        if (e & 1) r = poly_mul_mod(r, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline poly poly_sub(poly a, const poly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
    return poly_trim(a);
}

inline poly poly_gcd(poly a, poly b, std::uint64_t p) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        // a mod b with b made monic first
        std::uint64_t lead = b.back();
        std::uint64_t inv = pow_mod_u64(lead, p - 2, p);
        for (auto& c : b) c = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * inv) % p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t c = a.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - (c * b[i]) % p) % p);
            a = poly_trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin irreducibility test for a monic polynomial of degree n over Z_p.
inline bool poly_irreducible(const poly& f, std::uint64_t p) {
    std::size_t n = f.size() - 1;
    if (n == 1) return true;
    poly x{0, 1};
    // x^(p^n) == x (mod f)
    poly t = x;
    for (std::size_t i = 0; i < n; ++i) t = poly_pow_mod(t, p, f, p);
    if (poly_sub(t, x, p) != poly()) return false;
    for (auto [r, e] : factorize(n)) {
        (void)e;
        poly u = x;
        for (std::size_t i = 0; i < n / r; ++i) u = poly_pow_mod(u, p, f, p);
        poly g = poly_gcd(poly_sub(u, x, p), f, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

struct FieldData;

} // namespace detail

class FiniteField;
FiniteField make_field(std::uint64_t p, const std::vector<std::uint32_t>& modulus);

namespace detail {

struct FieldData {
    std::uint64_t p = 0;
    std::uint32_t n = 0;
    std::uint64_t q = 0;
    std::vector<std::uint32_t> modulus; // ascending, size n+1, monic
    std::vector<std::pair<std::uint64_t, int>> q1_factors;

    // discrete-log machinery (present when q <= 2^20)
    bool has_tables = false;
    std::uint64_t alpha_code = 0;              // designated primitive element
    std::vector<std::uint32_t> exp_table;      // k -> code of alpha^k, size q-1
    std::vector<std::int64_t> log_table;       // code -> k, -1 for zero
    std::vector<std::uint32_t> trace_pow;      // k -> Tr(alpha^k), size q-1

    std::vector<std::uint32_t> trace_basis; // Tr(x^j) for j in [0, n)
    std::vector<cplx> zeta_p;               // p-th roots of unity

    // Gauss sums G(chi_j) for all j, built on first use (chars.hpp)
    mutable std::once_flag gauss_once;
    mutable std::vector<cplx> gauss_table;

    std::uint64_t encode(const std::vector<std::uint32_t>& c) const {
        std::uint64_t code = 0;
        for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
        return code;
    }
    std::vector<std::uint32_t> decode(std::uint64_t code) const {
        std::vector<std::uint32_t> c(n, 0);
        for (std::uint32_t i = 0; i < n; ++i) {
            c[i] = static_cast<std::uint32_t>(code % p);
            code /= p;
        }
        return c;
    }
};

} // namespace detail

// Immutable handle on GF(p^n); cheap to copy, safe to share across threads.
class FiniteField {
  public:
    std::uint64_t p() const { return d_->p; }
    std::uint32_t n() const { return d_->n; }
    std::uint64_t q() const { return d_->q; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
    bool has_dlog() const { return d_->has_tables; }
    const std::vector<std::pair<std::uint64_t, int>>& order_factors() const { return d_->q1_factors; }

    FieldElement zero() const { return FieldElement{std::vector<std::uint32_t>(d_->n, 0)}; }
    FieldElement one() const {
        auto e = zero();
        e.coeffs[0] = 1;
        return e;
    }
    // the polynomial-basis generator (class of x); equals the residue p-c0 for n=1
    FieldElement gen_x() const {
        if (d_->n == 1) return from_code(mod_floor(-static_cast<std::int64_t>(d_->modulus[0]), static_cast<std::int64_t>(d_->p)));
        auto e = zero();
        e.coeffs[1] = 1;
        return e;
    }

    FieldElement from_coeffs(const std::vector<std::uint32_t>& c) const {
        require(c.size() <= d_->n, errc::bad_args, "coefficient vector longer than extension degree");
        FieldElement e = zero();
        for (std::size_t i = 0; i < c.size(); ++i) {
            require(c[i] < d_->p, errc::bad_args, "coefficient out of range [0, p)");
            e.coeffs[i] = c[i];
        }
        return e;
    }
    FieldElement from_code(std::uint64_t code) const { return FieldElement{d_->decode(code)}; }
    std::uint64_t code(const FieldElement& e) const { return d_->encode(e.coeffs); }
    bool is_zero(const FieldElement& e) const {
        return std::all_of(e.coeffs.begin(), e.coeffs.end(), [](std::uint32_t c) { return c == 0; });
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement r = a;
        for (std::uint32_t i = 0; i < d_->n; ++i) r.coeffs[i] = static_cast<std::uint32_t>((r.coeffs[i] + b.coeffs[i]) % d_->p);
        return r;
    }
    FieldElement neg(const FieldElement& a) const {
        FieldElement r = a;
        for (auto& c : r.coeffs) c = static_cast<std::uint32_t>((d_->p - c) % d_->p);
        return r;
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        auto r = detail::poly_mul_mod(detail::poly_trim(a.coeffs), detail::poly_trim(b.coeffs), d_->modulus, d_->p);
        r.resize(d_->n, 0);
        return FieldElement{std::move(r)};
    }

    FieldElement pow(const FieldElement& a, std::int64_t e) const {
        if (is_zero(a)) {
            require(e > 0, errc::zero_element, "0 cannot be raised to a nonpositive power");
            return a;
        }
        std::uint64_t m = d_->q - 1;
        std::uint64_t ee = static_cast<std::uint64_t>(mod_floor(e, static_cast<std::int64_t>(m)));
        FieldElement base = a;
        FieldElement r = one();
        while (ee) {
            if (ee & 1) r = mul(r, base);
            base = mul(base, base);
            ee >>= 1;
        }
        return r;
    }

    FieldElement inv(const FieldElement& a) const {
        require(!is_zero(a), errc::zero_element, "zero has no inverse");
        return pow(a, static_cast<std::int64_t>(d_->q) - 2);
    }

    // absolute trace Tr(x) = x + x^p + ... + x^(p^(n-1)), valued in Z_p;
    // evaluated through the precomputed trace form (trace is F_p-linear)
    std::uint32_t trace(const FieldElement& a) const {
        std::uint64_t t = 0;
        for (std::uint32_t i = 0; i < d_->n; ++i) t += static_cast<std::uint64_t>(a.coeffs[i]) * d_->trace_basis[i];
        return static_cast<std::uint32_t>(t % d_->p);
    }

    std::uint64_t order(const FieldElement& a) const {
        require(!is_zero(a), errc::zero_element, "zero has no multiplicative order");
        std::uint64_t ord = d_->q - 1;
        for (auto [r, e] : d_->q1_factors) {
            for (int i = 0; i < e; ++i) {
                FieldElement t = pow(a, static_cast<std::int64_t>(ord / r));
                if (t == one())
                    ord /= r;
                else
                    break;
            }
        }
        return ord;
    }

    bool is_primitive(const FieldElement& a) const {
        require(!is_zero(a), errc::zero_element, "primitivity is undefined for zero");
        for (auto [r, e] : d_->q1_factors) {
            (void)e;
            if (pow(a, static_cast<std::int64_t>((d_->q - 1) / r)) == one()) return false;
        }
        return true;
    }

    // designated primitive element (dlog base): for prime fields the smallest
    // positive primitive root; for extensions, x when primitive, otherwise the
    // primitive element of smallest integer code
    FieldElement alpha() const {
        require_tables();
        return from_code(d_->alpha_code);
    }

    FieldElement alpha_pow(std::int64_t k) const {
        require_tables();
        return from_code(d_->exp_table[mod_floor(k, static_cast<std::int64_t>(d_->q - 1))]);
    }

    std::uint64_t dlog(const FieldElement& a) const {
        require_tables();
        require(!is_zero(a), errc::zero_element, "zero has no discrete log");
        return static_cast<std::uint64_t>(d_->log_table[code(a)]);
    }

    // Tr(alpha^k) through the table built at construction
    std::uint32_t trace_of_alpha_pow(std::int64_t k) const {
        require_tables();
        return d_->trace_pow[mod_floor(k, static_cast<std::int64_t>(d_->q - 1))];
    }

    // e^(2*pi*i*t/p)
    cplx zeta_p(std::uint64_t t) const { return d_->zeta_p[t % d_->p]; }

    // One representative per Galois-conjugacy class of primitive elements,
    // the representative being the one of smallest discrete-log exponent.
    std::vector<FieldElement> primitive_representatives() const {
        require_tables();
        std::uint64_t m = d_->q - 1;
        std::vector<FieldElement> reps;
        for (std::uint64_t e = 1; e < m; ++e) {
            if (std::gcd(e, m) != 1) continue;
            bool smallest = true;
            std::uint64_t f = e;
            for (std::uint32_t k = 1; k < d_->n; ++k) {
                f = mul_mod_u64(f, d_->p, m);
                if (f < e) {
                    smallest = false;
                    break;
                }
            }
            if (smallest) reps.push_back(from_code(d_->exp_table[e]));
        }
        return reps;
    }

    std::vector<std::uint64_t> primitive_representative_exponents() const {
        require_tables();
        std::uint64_t m = d_->q - 1;
        std::vector<std::uint64_t> reps;
        for (std::uint64_t e = 1; e < m; ++e) {
            if (std::gcd(e, m) != 1) continue;
            bool smallest = true;
            std::uint64_t f = e;
            for (std::uint32_t k = 1; k < d_->n; ++k) {
                f = mul_mod_u64(f, d_->p, m);
                if (f < e) {
                    smallest = false;
                    break;
                }
            }
            if (smallest) reps.push_back(e);
        }
        return reps;
    }

    // d is trivial iff d = p^k (mod q-1), reversing iff d = -p^k; the trivial
    // class takes precedence in the degenerate overlaps possible at tiny q
    DecimationClass classify_decimation(std::int64_t d) const {
        std::int64_t m = static_cast<std::int64_t>(d_->q) - 1;
        std::int64_t dm = mod_floor(d, m);
        require(std::gcd(static_cast<std::uint64_t>(dm), static_cast<std::uint64_t>(m)) == 1, errc::not_coprime,
                "decimation must be coprime to q-1");
        std::uint64_t pk = 1;
        for (std::uint32_t k = 0; k < d_->n; ++k) {
            if (static_cast<std::int64_t>(pk) == dm) return DecimationClass{DecimationClass::Kind::Trivial, d};
            pk = mul_mod_u64(pk, d_->p, static_cast<std::uint64_t>(m));
        }
        pk = 1;
        for (std::uint32_t k = 0; k < d_->n; ++k) {
            if (mod_floor(-static_cast<std::int64_t>(pk), m) == dm) return DecimationClass{DecimationClass::Kind::Reversing, d};
            pk = mul_mod_u64(pk, d_->p, static_cast<std::uint64_t>(m));
        }
        return DecimationClass{DecimationClass::Kind::Other, d};
    }

    const detail::FieldData* data() const { return d_.get(); }

    bool same_field(const FiniteField& o) const { return d_.get() == o.d_.get(); }

    std::string describe() const {
        std::ostringstream os;
        os << "GF(" << d_->q << ") = GF(" << d_->p << "^" << d_->n << ")";
        return os.str();
    }

  private:
    friend FiniteField make_field(std::uint64_t, const std::vector<std::uint32_t>&);
    explicit FiniteField(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

    void require_tables() const {
        require(d_->has_tables, errc::field_too_large, "field has no discrete-log table (q > 2^20)");
    }

    std::shared_ptr<const detail::FieldData> d_;
};

inline FiniteField make_field(std::uint64_t p, const std::vector<std::uint32_t>& modulus) {
    require(is_prime_u64(p), errc::not_prime, "characteristic must be prime: " + std::to_string(p));
    require(modulus.size() >= 2, errc::bad_args, "modulus must have degree >= 1");
    require(modulus.back() == 1, errc::bad_args, "modulus must be monic");
    for (auto c : modulus) require(c < p, errc::bad_args, "modulus coefficient out of range [0, p)");
    require(detail::poly_irreducible(modulus, p), errc::reducible_modulus, "modulus is reducible over Z_p");

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->n = static_cast<std::uint32_t>(modulus.size() - 1);
    d->modulus = modulus;
    require(d->n <= 24 && p <= (1u << 16), errc::bad_args, "supported range is n <= 24, p <= 2^16");
    double qd = std::pow(static_cast<double>(p), static_cast<double>(d->n));
    require(qd <= 1099511627776.0, errc::field_too_large, "q must not exceed 2^40");
    d->q = 1;
    for (std::uint32_t i = 0; i < d->n; ++i) d->q *= p;
    d->q1_factors = factorize(d->q - 1);

    d->zeta_p.resize(p);
    for (std::uint64_t t = 0; t < p; ++t) d->zeta_p[t] = unit_root(static_cast<std::int64_t>(t), static_cast<std::int64_t>(p));

    FiniteField F(d);

    // trace of the basis monomials x^j
    d->trace_basis.assign(d->n, 0);
    {
        FieldElement xj = F.one();
        FieldElement x = F.gen_x();
        if (d->n == 1) {
            d->trace_basis[0] = 1;
        } else {
            for (std::uint32_t j = 0; j < d->n; ++j) {
                FieldElement acc = F.zero();
                FieldElement t = xj;
                for (std::uint32_t i = 0; i < d->n; ++i) {
                    acc = F.add(acc, t);
                    t = F.pow(t, static_cast<std::int64_t>(p));
                }
                d->trace_basis[j] = acc.coeffs[0];
                xj = F.mul(xj, x);
            }
        }
    }

    if (d->q <= (1u << 20)) {
        // pick the dlog base
        std::uint64_t alpha_code = 0;
        if (d->n >= 2) {
            FieldElement x = F.gen_x();
            if (F.is_primitive(x)) alpha_code = F.code(x);
        }
        if (alpha_code == 0) {
            for (std::uint64_t c = 1; c < d->q; ++c) {
                FieldElement e = F.from_code(c);
                if (F.is_primitive(e)) {
                    alpha_code = c;
                    break;
                }
            }
        }
        d->alpha_code = alpha_code;
        d->exp_table.resize(d->q - 1);
        d->log_table.assign(d->q, -1);
        d->trace_pow.resize(d->q - 1);
        FieldElement a = F.from_code(alpha_code);
        FieldElement cur = F.one();
        for (std::uint64_t k = 0; k < d->q - 1; ++k) {
            std::uint64_t c = F.code(cur);
            d->exp_table[k] = static_cast<std::uint32_t>(c);
            d->log_table[c] = static_cast<std::int64_t>(k);
            d->trace_pow[k] = F.trace(cur);
            cur = F.mul(cur, a);
        }
        d->has_tables = true;
    }
    return F;
}

// text form used by the CLI: "p=<int>; modulus=<c0,c1,...,cn>"
inline FiniteField parse_field_spec(const std::string& text) {
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
        return s;
    };
    std::string s = strip(text);
    auto semi = s.find(';');
    require(semi != std::string::npos, errc::bad_spec, "field spec must look like 'p=<int>; modulus=<c0,c1,...>'");
    std::string ppart = s.substr(0, semi);
    std::string mpart = s.substr(semi + 1);
    require(ppart.rfind("p=", 0) == 0, errc::bad_spec, "field spec missing 'p='");
    require(mpart.rfind("modulus=", 0) == 0, errc::bad_spec, "field spec missing 'modulus='");
    std::uint64_t p = 0;
    try {
        p = std::stoull(ppart.substr(2));
    } catch (const std::exception&) {
        fail(errc::bad_spec, "cannot parse p in field spec");
    }
    std::vector<std::uint32_t> mod;
    std::stringstream ms(mpart.substr(8));
    std::string tok;
    while (std::getline(ms, tok, ',')) {
        try {
            mod.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (const std::exception&) {
            fail(errc::bad_spec, "cannot parse modulus coefficient '" + tok + "'");
        }
    }
    return make_field(p, mod);
}

// First monic irreducible of degree n over Z_p (by ascending coefficient
// code) whose residue class of x is primitive.
inline std::vector<std::uint32_t> find_primitive_modulus(std::uint64_t p, std::uint32_t n) {
    require(n >= 1, errc::bad_args, "degree must be positive");
    if (n == 1) return {0, 1};
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) count *= p;
    for (std::uint64_t m = 1; m < count; ++m) {
        if (m % p == 0) continue; // constant term zero => divisible by x
        std::vector<std::uint32_t> mod(n + 1, 0);
        std::uint64_t t = m;
        for (std::uint32_t i = 0; i < n; ++i) {
            mod[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        mod[n] = 1;
        if (!detail::poly_irreducible(mod, p)) continue;
        FiniteField F = make_field(p, mod);
        if (F.is_primitive(F.gen_x())) return mod;
    }
    fail(errc::bad_args, "no primitive modulus found");
}

// The moduli used for the library's stock experiments; others are searched.
inline FiniteField default_field(std::uint64_t p, std::uint32_t n) {
    if (p == 2 && n == 8) return make_field(2, {1, 0, 1, 1, 1, 0, 0, 0, 1}); // x^8+x^4+x^3+x^2+1
    if (p == 2 && n == 9) return make_field(2, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}); // x^9+x^4+1
    if (p == 3 && n == 6) return make_field(3, {2, 1, 0, 0, 0, 0, 1});       // x^6+x-1
    return make_field(p, find_primitive_modulus(p, n));
}

} // namespace charcorr
