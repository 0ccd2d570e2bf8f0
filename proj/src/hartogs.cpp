#include "ch/hartogs.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ch/errors.hpp"

namespace ch {

HartogsParams make_hartogs(DomainSpec base, Real mu, int d0) {
  if (mu <= 0.0) throw Error(errc::hypothesis_violation, "mu must be positive");
  if (d0 < 1) throw Error(errc::hypothesis_violation, "d0 must be at least 1");
  return {std::move(base), mu, d0};
}

HartogsPoint split_point(const HartogsParams& params, const ComplexVector& stacked) {
  const int d = params.base.dim;
  if (stacked.size() != d + params.d0)
    throw Error(errc::shape_mismatch, "expected d + d0 coordinates");
  HartogsPoint v;
  v.z = stacked.head(d);
  v.w = stacked.tail(params.d0);
  return v;
}

Real rho(const HartogsParams& params, const HartogsPoint& v) {
  if (v.w.size() != params.d0)
    throw Error(errc::shape_mismatch, "fiber coordinate count mismatch");
  if (!contains(params.base, v.z))
    throw Error(errc::outside_domain, "base point outside the domain");
  return std::pow(generic_norm(params.base, v.z), params.mu) - v.w.squaredNorm();
}

Real hermitian_weight(const HartogsParams& params, int m, const HartogsPoint& v) {
  if (m < 0) throw Error(errc::hypothesis_violation, "m must be nonnegative");
  const Real r = rho(params, v);
  if (r <= 0.0) throw Error(errc::outside_domain, "point outside M");
  return std::pow(r, m);
}

ComplexMatrix metric_hartogs(const HartogsParams& params, const HartogsPoint& v,
                             const Stencil& stencil) {
  if (rho(params, v) <= 0.0)
    throw Error(errc::outside_domain, "metric requested outside M");
  auto rho_field = [&](const ComplexVector& stacked) {
    const HartogsPoint p = split_point(params, stacked);
    if (!contains(params.base, p.z))
      throw Error(errc::domain_violation, "stencil node left the base domain");
    return std::pow(generic_norm(params.base, p.z), params.mu) - p.w.squaredNorm();
  };
  ComplexMatrix g = -0.5 * complex_hessian_log(rho_field, v.stacked(), stencil);
  if (detail::min_eigenvalue(g) <= 0.0)
    throw Error(errc::domain_violation,
                "Hartogs metric not positive definite at an interior point");
  return g;
}

Real volume_density(const HartogsParams& params, const HartogsPoint& v,
                    const Stencil& stencil) {
  const int n = params.base.dim + params.d0;
  const ComplexMatrix g = metric_hartogs(params, v, stencil);
  const Real det = g.determinant().real();
  return std::pow(2.0, n) * det;
}

namespace {

// A(z) by finite differences with the step shrunk near the boundary so the
// stencil stays inside; below a small floor on N the direct stencil cannot
// fit and A is continued along the ray by its structural scaling
// A ~ N^{mu(d+1) - gamma}.
Real boundary_density_adaptive(const DomainSpec& spec, Real mu, const ComplexVector& z,
                               const Stencil& stencil) {
  const Real n_z = generic_norm(spec, z);
  constexpr Real floor = 1e-3;
  auto adapted = [&](Real n_value) {
    Stencil s = stencil;
    s.step = std::max(1e-6, std::min(stencil.step, 0.05 * n_value));
    return s;
  };
  if (n_z >= floor) return boundary_density_A(spec, mu, z, adapted(n_z));

  Real t = 0.9;
  while (generic_norm(spec, (t * z).eval()) < 0.3) t *= 0.9;
  const ComplexVector z_ref = t * z;
  const Real n_ref = generic_norm(spec, z_ref);
  const Real a_ref = boundary_density_A(spec, mu, z_ref, adapted(n_ref));
  return a_ref * std::pow(n_z / n_ref, mu * (spec.dim + 1) - spec.genus);
}

}  // namespace

std::vector<BoundarySample> sample_boundary(const HartogsParams& params, int count,
                                            std::uint64_t seed,
                                            const Stencil& stencil) {
  if (params.d0 != 1)
    throw Error(errc::unsupported, "boundary sampling is defined for d0 = 1");
  const SampleSet base = sample_interior(params.base, count, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);

  const int d = params.base.dim;
  const Real two_pi = 2.0 * std::numbers::pi;
  std::vector<BoundarySample> samples;
  samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    BoundarySample s;
    s.z = base.points[i];
    s.theta_w = two_pi * uniform01(rng());
    const Real density =
        std::pow(2.0, d) *
        boundary_density_adaptive(params.base, params.mu, s.z, stencil);
    s.weight = base.weights[i] * two_pi * density;
    samples.push_back(std::move(s));
  }
  return samples;
}

HartogsPoint boundary_point(const HartogsParams& params, const BoundarySample& sample) {
  HartogsPoint v;
  v.z = sample.z;
  v.w = ComplexVector(1);
  const Real radius = std::pow(generic_norm(params.base, sample.z), 0.5 * params.mu);
  v.w(0) = radius * Complex(std::cos(sample.theta_w), std::sin(sample.theta_w));
  return v;
}

SampleSet sample_hartogs_interior(const HartogsParams& params, int count,
                                  std::uint64_t seed) {
  SampleSet set;
  set.seed = seed;
  set.points.reserve(count);
  std::mt19937_64 rng(seed);

  const int d = params.base.dim;
  const int n = d + params.d0;
  const Real box_volume = std::pow(4.0, n);
  const long long max_trials =
      std::max<long long>(static_cast<long long>(count) * 1000000LL, 1000000LL);

  long long trials = 0;
  ComplexVector v(n);
  while (static_cast<int>(set.points.size()) < count) {
    if (trials >= max_trials)
      throw Error(errc::sampling_failure, "acceptance ratio below 1e-6 over M");
    ++trials;
    for (int j = 0; j < n; ++j) {
      const Real re = 2.0 * uniform01(rng()) - 1.0;
      const Real im = 2.0 * uniform01(rng()) - 1.0;
      v(j) = Complex(re, im);
    }
    const ComplexVector z = v.head(d);
    if (!contains(params.base, z)) continue;
    const Real n_mu = std::pow(generic_norm(params.base, z), params.mu);
    if (v.tail(params.d0).squaredNorm() < n_mu) set.points.push_back(v);
  }

  const Real weight = box_volume / static_cast<Real>(trials);
  set.weights.assign(count, weight);
  const Real p = static_cast<Real>(count) / static_cast<Real>(trials);
  set.variance_hint = box_volume * std::sqrt(p * (1.0 - p) / static_cast<Real>(trials));
  return set;
}

}  // namespace ch
