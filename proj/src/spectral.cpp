#include "cayleymix/spectral.hpp"

#include <cmath>
#include <numbers>

#include "cayleymix/error.hpp"

namespace cayleymix {

CharacterSpectrum eigenvalues(const AbelianGroup& group, const GeneratorMultiset& gens,
                              bool directed, const SpectralOptions& options) {
  const Index n = group.order();
  if (n > options.max_order) {
    throw LimitExceeded("spectrum needs n <= " + std::to_string(options.max_order) + ", got " +
                        std::to_string(n));
  }
  if (gens.k() == 0) throw InvalidArgument("empty generator multiset");
  for (const auto& z : gens.elems) {
    if (!group.contains(z)) throw InvalidArgument("generator not in group " + group.literal());
  }
  const auto& sides = group.side_lengths();
  const std::size_t rank = sides.size();
  const double inv_k = 1.0 / static_cast<double>(gens.k());

  CharacterSpectrum spec{group, directed, std::vector<cplx>(n), options};
  std::vector<std::int64_t> chi(rank, 0);
  for (Index idx = 0; idx < n; ++idx) {
    double re = 0.0;
    double im = 0.0;
    for (const auto& z : gens.elems) {
      // phase Σ_r χ_r z_r / m_r, reduced to [−½, ½) turns
      double turns = 0.0;
      for (std::size_t r = 0; r < rank; ++r) {
        const auto a = static_cast<std::int64_t>((static_cast<__int128>(chi[r]) * z.coords[r]) % sides[r]);
        turns += static_cast<double>(a) / static_cast<double>(sides[r]);
      }
      turns -= std::floor(turns + 0.5);
      const double angle = 2.0 * std::numbers::pi * turns;
      re += std::cos(angle);
      if (directed) im += std::sin(angle);
    }
    spec.eigenvalues[idx] = cplx(re * inv_k, im * inv_k);
    // advance χ in mixed-radix order
    for (std::size_t r = rank; r-- > 0;) {
      if (++chi[r] < sides[r]) break;
      chi[r] = 0;
    }
  }
  return spec;
}

GroupDistribution walk_distribution(const CharacterSpectrum& spectrum, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("time must be finite and >= 0");
  const Index n = spectrum.group.order();
  std::vector<cplx> hat(n);
  for (Index i = 0; i < n; ++i) hat[i] = std::exp(t * (spectrum.eigenvalues[i] - 1.0));
  // p(x) = (1/n) Σ_χ E[χ(S_t)] conj(χ(x))
  mixed_radix_dft(hat, spectrum.group.side_lengths(), -1, spectrum.options.direct_dft_max);
  GroupDistribution dist{spectrum.group, std::vector<double>(n)};
  const double inv_n = 1.0 / static_cast<double>(n);
  double residue = 0.0;
  for (Index i = 0; i < n; ++i) {
    dist.probs[i] = hat[i].real() * inv_n;
    residue = std::max(residue, std::fabs(hat[i].imag() * inv_n));
  }
  if (residue > spectrum.options.residue_tolerance) {
    throw NumericalError("inverse character transform left imaginary residue " +
                         std::to_string(residue));
  }
  return dist;
}

double tv_distance(const GroupDistribution& dist) {
  const double u = 1.0 / static_cast<double>(dist.probs.size());
  long double acc = 0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) acc += std::fabs(dist.at(i) - u);
  return static_cast<double>(0.5L * acc);
}

double l2_distance(const GroupDistribution& dist) {
  const double n = static_cast<double>(dist.probs.size());
  const double u = 1.0 / n;
  long double acc = 0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const long double d = dist.at(i) - u;
    acc += d * d;
  }
  return static_cast<double>(std::sqrt(n * acc));
}

std::vector<CurvePoint> tv_curve(const CharacterSpectrum& spectrum, std::span<const double> times) {
  std::vector<CurvePoint> out;
  out.reserve(times.size());
  for (const double t : times) {
    const GroupDistribution dist = walk_distribution(spectrum, t);
    const CurvePoint pt{t, tv_distance(dist), l2_distance(dist)};
    if (pt.tv > 0.5 * pt.l2 + 1e-12) {
      throw NumericalError("TV exceeds half the L2 distance at t = " + std::to_string(t));
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<CurvePoint> tv_curve(const AbelianGroup& group, const GeneratorMultiset& gens,
                                 bool directed, std::span<const double> times,
                                 const SpectralOptions& options) {
  return tv_curve(eigenvalues(group, gens, directed, options), times);
}

bool detect_non_generating(const CharacterSpectrum& spectrum) {
  std::size_t near_one = 0;
  for (const cplx& lambda : spectrum.eigenvalues) {
    if (std::abs(lambda - 1.0) <= 1e-12 && ++near_one > 1) return true;
  }
  return false;
}

}  // namespace cayleymix
