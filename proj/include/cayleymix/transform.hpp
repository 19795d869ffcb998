#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace cayleymix {

using cplx = std::complex<double>;

/// Lengths up to this use the direct O(m²) DFT; longer axes use radix-2 FFT
/// (powers of two) or Bluestein's chirp transform.
inline constexpr std::int64_t kDirectDftMaxLength = 64;

/// In-place DFT: out[f] = Σ_x in[x] exp(sign · 2πi f x / m), sign = ±1. Unnormalised.
void dft(std::span<cplx> data, int sign, std::int64_t direct_max = kDirectDftMaxLength);

/// Applies dft along every axis of a row-major array with the given side
/// lengths (last axis fastest), i.e. the character transform of ⊕ Z_{m_j}.
void mixed_radix_dft(std::span<cplx> data, std::span<const std::int64_t> sides, int sign,
                     std::int64_t direct_max = kDirectDftMaxLength);

}  // namespace cayleymix
