// Seeded sampling containers and deterministic integration.
//
// All reductions run over the sample index in a fixed pairwise (tree) order,
// so results are reproducible regardless of how integrand evaluations are
// scheduled.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ch/errors.hpp"
#include "ch/types.hpp"

namespace ch {

struct SampleSet {
  enum class Kind { monte_carlo, radial };

  std::vector<ComplexVector> points;
  std::vector<Real> weights;
  std::uint64_t seed = 0;
  Real variance_hint = 0.0;
  Kind kind = Kind::monte_carlo;

  std::size_t size() const { return points.size(); }
};

namespace detail {

template <typename T>
T pairwise_sum(const std::vector<T>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 16) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += terms[i];
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

}  // namespace detail

template <typename T>
T pairwise_sum(const std::vector<T>& terms) {
  if (terms.empty()) return T{};
  return detail::pairwise_sum(terms, 0, terms.size());
}

/// Weighted quadrature sum with a Monte Carlo standard-error estimate:
/// the weighted sample variance of the integrand plus the sampler's own
/// volume-estimate uncertainty (variance_hint), combined by the delta method.
/// Throws `integrand error` when f is non-finite at a node.
template <typename F>
std::pair<Real, Real> integrate(F&& f, const SampleSet& samples) {
  const std::size_t n = samples.size();
  std::vector<Real> terms(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Real fi = f(samples.points[i]);
    if (!std::isfinite(fi)) {
      throw Error(errc::quadrature_failure,
                  "integrand not finite at node " + std::to_string(i));
    }
    fs[i] = fi;
    terms[i] = samples.weights[i] * fi;
  }
  const Real value = pairwise_sum(terms);
  Real stderr_est = 0.0;
  if (n > 1 && samples.kind == SampleSet::Kind::monte_carlo) {
    const Real total_weight = pairwise_sum(samples.weights);
    const Real mean_f = value / total_weight;
    std::vector<Real> spread(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Real centered = samples.weights[i] * (fs[i] - mean_f);
      spread[i] = centered * centered;
    }
    const Real var = pairwise_sum(spread) * static_cast<Real>(n) /
                     static_cast<Real>(n - 1);
    const Real volume_term = mean_f * samples.variance_hint;
    stderr_est = std::sqrt(var + volume_term * volume_term);
  }
  return {value, stderr_est};
}

template <typename F>
std::pair<Complex, Real> integrate_complex(F&& f, const SampleSet& samples) {
  const std::size_t n = samples.size();
  std::vector<Complex> terms(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex fi = f(samples.points[i]);
    if (!std::isfinite(fi.real()) || !std::isfinite(fi.imag())) {
      throw Error(errc::quadrature_failure,
                  "integrand not finite at node " + std::to_string(i));
    }
    fs[i] = fi;
    terms[i] = samples.weights[i] * fi;
  }
  const Complex value = pairwise_sum(terms);
  Real stderr_est = 0.0;
  if (n > 1 && samples.kind == SampleSet::Kind::monte_carlo) {
    const Real total_weight = pairwise_sum(samples.weights);
    const Complex mean_f = value / total_weight;
    std::vector<Real> spread(n);
    for (std::size_t i = 0; i < n; ++i)
      spread[i] = samples.weights[i] * samples.weights[i] * std::norm(fs[i] - mean_f);
    const Real var = pairwise_sum(spread) * static_cast<Real>(n) /
                     static_cast<Real>(n - 1);
    const Real volume_term = std::abs(mean_f) * samples.variance_hint;
    stderr_est = std::sqrt(var + volume_term * volume_term);
  }
  return {value, stderr_est};
}

/// Gauss-Legendre nodes and weights on [0, 1], exact for polynomials of
/// degree <= 2n - 1. Computed by the Golub-Welsch eigenvalue method.
std::pair<Vector, Vector> gauss_legendre(int n);

struct DomainSpec;

/// Radial quadrature in t = r^2 over [0, 1] for a rank-1 base (or ball fiber
/// product), exact for polynomial radial integrands up to `degree`. Angular
/// integrals are meant to be handled analytically by the caller.
SampleSet radial_rule(const DomainSpec& spec, int degree);

/// Uniform doubles in [0, 1) from a raw 64-bit stream; used instead of
/// std::uniform_real_distribution so that sample sets are bit-reproducible
/// across standard libraries.
inline Real uniform01(std::uint64_t raw) {
  return static_cast<Real>(raw >> 11) * 0x1.0p-53;
}

}  // namespace ch
