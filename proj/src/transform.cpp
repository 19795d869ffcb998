#include "cayleymix/transform.hpp"

#include <cmath>
#include <numbers>

#include "cayleymix/error.hpp"

namespace cayleymix {

namespace {

cplx root_of_unity(std::int64_t j, std::int64_t m, int sign) {
  // reduce j mod m first so the angle is computed from a small exact fraction
  const std::int64_t r = ((j % m) + m) % m;
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

void direct_dft(std::span<cplx> data, int sign) {
  const auto m = static_cast<std::int64_t>(data.size());
  std::vector<cplx> twiddle(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) twiddle[static_cast<std::size_t>(j)] = root_of_unity(j, m, sign);
  std::vector<cplx> out(data.size());
  for (std::int64_t f = 0; f < m; ++f) {
    cplx acc{};
    std::int64_t idx = 0;
    for (std::int64_t x = 0; x < m; ++x) {
      acc += data[static_cast<std::size_t>(x)] * twiddle[static_cast<std::size_t>(idx)];
      idx += f;
      if (idx >= m) idx -= m;
    }
    out[static_cast<std::size_t>(f)] = acc;
  }
  std::copy(out.begin(), out.end(), data.begin());
}

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

void radix2_fft(std::span<cplx> data, int sign) {
  const std::size_t m = data.size();
  for (std::size_t i = 1, j = 0; i < m; ++i) {
    std::size_t bit = m >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<cplx> w(half);
    for (std::size_t j = 0; j < half; ++j) {
      w[j] = root_of_unity(static_cast<std::int64_t>(j), static_cast<std::int64_t>(len), sign);
    }
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cplx u = data[start + j];
        const cplx v = data[start + j + half] * w[j];
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
}

// Bluestein: f x = (f² + x² − (f − x)²)/2 turns the DFT into a convolution
// of length ≥ 2m − 1, evaluated with power-of-two FFTs.
void bluestein(std::span<cplx> data, int sign) {
  const auto m = static_cast<std::int64_t>(data.size());
  std::size_t len = 1;
  while (len < static_cast<std::size_t>(2 * m - 1)) len <<= 1;
  // chirp[j] = exp(sign·πi j²/m), with j² reduced mod 2m
  std::vector<cplx> chirp(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) {
    const auto sq = static_cast<std::int64_t>((static_cast<__int128>(j) * j) % (2 * m));
    chirp[static_cast<std::size_t>(j)] = root_of_unity(sq, 2 * m, sign);
  }
  std::vector<cplx> a(len);
  std::vector<cplx> b(len);
  for (std::int64_t j = 0; j < m; ++j) a[static_cast<std::size_t>(j)] = data[static_cast<std::size_t>(j)] * chirp[static_cast<std::size_t>(j)];
  b[0] = std::conj(chirp[0]);
  for (std::int64_t j = 1; j < m; ++j) {
    b[static_cast<std::size_t>(j)] = b[len - static_cast<std::size_t>(j)] = std::conj(chirp[static_cast<std::size_t>(j)]);
  }
  radix2_fft(a, -1);
  radix2_fft(b, -1);
  for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
  radix2_fft(a, +1);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::int64_t f = 0; f < m; ++f) {
    data[static_cast<std::size_t>(f)] = a[static_cast<std::size_t>(f)] * scale * chirp[static_cast<std::size_t>(f)];
  }
}

}  // namespace

void dft(std::span<cplx> data, int sign, std::int64_t direct_max) {
  if (sign != 1 && sign != -1) throw InvalidArgument("dft sign must be +1 or -1");
  if (data.size() <= 1) return;
  if (static_cast<std::int64_t>(data.size()) <= direct_max) {
    direct_dft(data, sign);
  } else if (is_power_of_two(data.size())) {
    radix2_fft(data, sign);
  } else {
    bluestein(data, sign);
  }
}

void mixed_radix_dft(std::span<cplx> data, std::span<const std::int64_t> sides, int sign,
                     std::int64_t direct_max) {
  std::size_t total = 1;
  for (const auto m : sides) total *= static_cast<std::size_t>(m);
  if (total != data.size()) throw InvalidArgument("array size does not match group order");
  std::size_t stride = total;
  std::vector<cplx> line;
  for (const auto side : sides) {
    const auto m = static_cast<std::size_t>(side);
    stride /= m;  // distance between consecutive entries along this axis
    line.resize(m);
    const std::size_t block = stride * m;
    for (std::size_t outer = 0; outer < total; outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t x = 0; x < m; ++x) line[x] = data[base + x * stride];
        dft(line, sign, direct_max);
        for (std::size_t x = 0; x < m; ++x) data[base + x * stride] = line[x];
      }
    }
  }
}

}  // namespace cayleymix
