// The Cartan-Hartogs domain M_Omega^{d0}(mu) = {(z, w) : ||w||^2 < N^mu(z)}:
// defining function, Hermitian weight, Kahler metric, volume density and
// boundary sampling against the contact volume form.
#pragma once

#include <cstdint>
#include <vector>

#include "ch/complex_calculus.hpp"
#include "ch/domain.hpp"
#include "ch/quadrature.hpp"
#include "ch/types.hpp"

namespace ch {

struct HartogsParams {
  DomainSpec base;
  Real mu = 1.0;
  int d0 = 1;
};

HartogsParams make_hartogs(DomainSpec base, Real mu, int d0);

struct HartogsPoint {
  ComplexVector z;
  ComplexVector w;

  ComplexVector stacked() const {
    ComplexVector v(z.size() + w.size());
    v << z, w;
    return v;
  }
};

HartogsPoint split_point(const HartogsParams& params, const ComplexVector& stacked);

/// Defining function rho(z, w) = N^mu(z) - ||w||^2; positive inside, zero on
/// the fiber part of the boundary. Throws when z leaves the base domain.
Real rho(const HartogsParams& params, const HartogsPoint& v);

/// Fiber-metric weight rho^m.
Real hermitian_weight(const HartogsParams& params, int m, const HartogsPoint& v);

/// Full metric -1/2 d dbar log rho over the d + d0 complex coordinates.
ComplexMatrix metric_hartogs(const HartogsParams& params, const HartogsPoint& v,
                             const Stencil& stencil);

/// Density of the Kahler volume form against Lebesgue measure:
/// 2^{d+d0} det(metric) = det(-d dbar log rho).
Real volume_density(const HartogsParams& params, const HartogsPoint& v,
                    const Stencil& stencil);

/// A point of the smooth boundary {||w||^2 = N^mu(z)} in (z, theta)
/// coordinates; for d0 = 1 the fiber coordinate is w = N^{mu/2} e^{i theta}.
/// The weight integrates the contact volume form alpha ^ (d alpha)^d: base
/// Lebesgue weight times 2 pi (angular) times the measured density 2^d A(z).
struct BoundarySample {
  ComplexVector z;
  Real theta_w = 0.0;
  Real weight = 0.0;
};

std::vector<BoundarySample> sample_boundary(const HartogsParams& params, int count,
                                            std::uint64_t seed,
                                            const Stencil& stencil = {});

/// Reconstructs the boundary point from a sample; |rho| < 1e-12 afterwards.
HartogsPoint boundary_point(const HartogsParams& params, const BoundarySample& sample);

/// Rejection sampler over the full domain M (used by Monte Carlo Gram
/// matrices); weights estimate Lebesgue measure on C^{d+d0}.
SampleSet sample_hartogs_interior(const HartogsParams& params, int count,
                                  std::uint64_t seed);

}  // namespace ch
