#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace charcorr {

using cplx = std::complex<double>;

// Every failure mode raised by the library carries one of these codes so
// callers (and the CLI) can react without string matching.
enum class errc {
    not_prime,
    reducible_modulus,
    zero_element,
    field_too_large,
    not_coprime,
    not_primitive,
    trivial_character,
    non_unit_replacement,
    length_mismatch,
    zero_energy,
    too_long,
    zero_x,
    non_positive,
    bad_case,
    bad_args,
    no_sign_change,
    unknown_figure,
    bad_bin_width,
    bad_spec,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

// floor-convention modulus, result in [0, m)
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod_u64(r, base, m);
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// trial division; adequate for q - 1 <= 2^40
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

// Kahan compensated accumulator; keeps long demerit-factor sums at the
// 1e-9 agreement the dual computation paths are held to.
struct kahan_sum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

inline double sqr(double x) { return x * x; }

constexpr double two_pi = 6.283185307179586476925286766559;

// e^(2*pi*i * num/den), exact on the axes so binary and quartic character
// values carry no rounding dust
inline cplx unit_root(std::int64_t num, std::int64_t den) {
    std::int64_t r = mod_floor(num, den);
    if (r == 0) return {1.0, 0.0};
    if (4 * r == den) return {0.0, 1.0};
    if (2 * r == den) return {-1.0, 0.0};
    if (4 * r == 3 * den) return {0.0, -1.0};
    return std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(den));
}

} // namespace charcorr
