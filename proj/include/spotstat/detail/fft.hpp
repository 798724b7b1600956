#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spotstat::detail {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place iterative radix-2 FFT. a.size() must be a power of two.
/// inverse=true applies the conjugate transform and the 1/N factor.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace spotstat::detail
