#pragma once

#include "common.hpp"

namespace charcorr::detail {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t r = 1;
    while (r < n) r <<= 1;
    return r;
}

// In-place iterative radix-2 transform. Sizes here never exceed a few
// thousand, and the result is cross-checked against the O(l^2) definitional
// correlation in the test suite, so no external FFT dependency is pulled in.
inline void fft(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    require((n & (n - 1)) == 0, errc::bad_args, "fft size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<cplx> tw(n / 2);
    const double ang = (inverse ? two_pi : -two_pi) / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k) tw[k] = std::polar(1.0, ang * static_cast<double>(k));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = tw[k * stride];
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

inline std::vector<cplx> fft_of(const std::vector<cplx>& terms, std::size_t n) {
    std::vector<cplx> a(n, cplx{0.0, 0.0});
    std::copy(terms.begin(), terms.end(), a.begin());
    fft(a, false);
    return a;
}

} // namespace charcorr::detail
