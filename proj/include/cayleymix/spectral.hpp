#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cayleymix/group.hpp"
#include "cayleymix/transform.hpp"

namespace cayleymix {

struct SpectralOptions {
  Index max_order = Index{1} << 22;
  std::int64_t direct_dft_max = kDirectDftMaxLength;
  /// Largest tolerated imaginary residue after the inverse transform.
  double residue_tolerance = 1e-9;
};

/// Eigenvalues λ_χ of the continuous-time Cayley walk generator, indexed by
/// character χ in mixed-radix order. Real for the undirected walk.
struct CharacterSpectrum {
  AbelianGroup group;
  bool directed = false;
  std::vector<cplx> eigenvalues;
  SpectralOptions options{};
};

CharacterSpectrum eigenvalues(const AbelianGroup& group, const GeneratorMultiset& gens,
                              bool directed, const SpectralOptions& options = {});

/// A probability vector on the group, indexed by mixed-radix element index.
struct GroupDistribution {
  AbelianGroup group;
  std::vector<double> probs;

  /// Probability with round-off negatives clipped to zero.
  double at(Index x) const { return probs[x] < 0.0 ? 0.0 : probs[x]; }
};

/// Law of the walk S(t) started at the identity.
GroupDistribution walk_distribution(const CharacterSpectrum& spectrum, double t);

/// ½ Σ |p(x) − 1/n|
double tv_distance(const GroupDistribution& dist);
/// √(n Σ (p(x) − 1/n)²), the L2 distance relative to the uniform measure.
double l2_distance(const GroupDistribution& dist);

struct CurvePoint {
  double t = 0.0;
  double tv = 0.0;
  double l2 = 0.0;
};

std::vector<CurvePoint> tv_curve(const AbelianGroup& group, const GeneratorMultiset& gens,
                                 bool directed, std::span<const double> times,
                                 const SpectralOptions& options = {});

/// Same, reusing an existing spectrum.
std::vector<CurvePoint> tv_curve(const CharacterSpectrum& spectrum, std::span<const double> times);

/// True when more than one character has λ_χ within 1e-12 of 1, i.e. the
/// generators span a proper subgroup.
bool detect_non_generating(const CharacterSpectrum& spectrum);

}  // namespace cayleymix
