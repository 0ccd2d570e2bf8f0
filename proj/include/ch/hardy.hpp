// Hardy space of the disk bundle over a Cartan-Hartogs base: weighted
// Bergman Gram matrices on the base, the hat-map isometry onto boundary
// functions, the Szego kernel as a truncated series and in closed form,
// and the log-term detector for its Fefferman decomposition.
//
// Measure conventions: the base measure carries a 1/pi^d and the boundary
// (Hardy) measure a 1/(2 pi^{d+1}); with these the hat map is an exact
// isometry and all downstream constants are self-consistent.
#pragma once

#include <functional>
#include <vector>

#include "ch/hartogs.hpp"
#include "ch/quadrature.hpp"
#include "ch/types.hpp"

namespace ch {

/// Multi-indices over the base coordinates, lexicographically sorted.
struct MonomialBasis {
  std::vector<std::vector<int>> exponents;
  int cutoff = 0;
};

MonomialBasis make_monomial_basis(int dim, int cutoff);

/// Lower-triangular transform mapping monomials to an orthonormal family
/// of the weighted Bergman space H^2_m; transform * G * transform^H = I.
struct GramFactor {
  MonomialBasis basis;
  ComplexMatrix transform;
  Real condition_number = 1.0;
  int m = 0;
  Real mu = 1.0;
};

/// Gram matrix of monomials under
///   G_ab = int N^{mu m} z^a zbar^b (2^d det metric_base) dLambda / pi^d.
/// Radial sample sets trigger the exact diagonal path (rank-1 bases); Monte
/// Carlo sets assemble the full matrix.
GramFactor base_gram(const DomainSpec& spec, Real mu, int m, const MonomialBasis& basis,
                     const SampleSet& quad, const Stencil& stencil = {});

/// N^{mu m}(z) times the inverse-Gram quadratic form of the monomial value
/// vector: the diagonal of the weighted Bergman kernel.
Real epsilon_base(const DomainSpec& spec, Real mu, int m, const ComplexVector& z,
                  const GramFactor& gram);

/// Fits epsilon(m) = sum_l b_l C(m+l, l) on d+1 nodes at each z sample,
/// checks cross-sample agreement and returns the mean coefficients.
std::vector<Real> fit_b_coefficients(const DomainSpec& spec, Real mu,
                                     const std::vector<ComplexVector>& z_samples,
                                     const std::vector<int>& m_grid, int cutoff = 48);

/// b_l computed at deterministic default interior samples.
std::vector<Real> default_b_coefficients(const HartogsParams& params, int cutoff = 48);

using BaseSection = std::function<Complex(const ComplexVector&)>;

/// Boundary value of the weight-m lift: 2^{-d/2} N^{-mu(d+1)/2} w^m s(z).
Complex hat_map_value(const DomainSpec& spec, Real mu, int m, const BaseSection& s,
                      const HartogsPoint& v);

/// Hardy-norm over base-norm ratio of the lift of s; the contract is that
/// the ratio is constant (= 1 under the normalizations above) in (s, m).
Real isometry_ratio(const DomainSpec& spec, Real mu, int m, const BaseSection& s,
                    const std::vector<BoundarySample>& boundary_samples,
                    const SampleSet& base_quad, const Stencil& stencil = {});

struct SzegoEvaluation {
  HartogsPoint point;
  Real series_value = 0.0;
  Real closed_value = 0.0;
  int m_cutoff = 0;
  int degree_cutoff = 0;
  Real tail_estimate = 0.0;
};

/// Closed form 2^{-d} N^{-mu(d+1)} sum_l b_l (1 - ||w||^2 N^{-mu})^{-(l+1)}.
Real szego_closed(const HartogsParams& params, const std::vector<Real>& b,
                  const HartogsPoint& v);

/// Truncated double series sum_m x^m sum_l b_l C(m+l, l) with the geometric
/// tail estimate recorded; throws near-boundary when the tail bound cannot
/// be met within the cutoff budget.
SzegoEvaluation szego_series(const HartogsParams& params, const std::vector<Real>& b,
                             const HartogsPoint& v, int m_cutoff, int degree_cutoff);

/// Convenience wrapper fitting b internally and filling both routes.
SzegoEvaluation szego_evaluate(const HartogsParams& params, const HartogsPoint& v,
                               int m_cutoff, int degree_cutoff);

struct LogTermFit {
  Real a_estimate = 0.0;  // coefficient of t^{-(d+1)}
  Real b_estimate = 0.0;  // coefficient of log t
  Real residual = 0.0;    // relative fit residual
};

/// Least-squares decomposition of a radial profile S(t) over the basis
/// {t^{-top}, ..., t^{-1}, log t, 1}. Exposed so synthetic profiles can
/// validate the detector.
LogTermFit fit_radial_profile(const std::vector<Real>& t, const std::vector<Real>& s,
                              int top_power);

/// Evaluates the Szego kernel along v_t = (z, w_t) with rho(v_t) = t over the
/// radial grid (closed form near the boundary) and fits the profile above.
LogTermFit log_term_fit(const HartogsParams& params, const ComplexVector& z,
                        const std::vector<Real>& radial_grid);

LogTermFit log_term_fit(const HartogsParams& params, const std::vector<Real>& b,
                        const ComplexVector& z, const std::vector<Real>& radial_grid);

/// Log-spaced default grid over [1e-3, 1e-1] * N^mu(z).
std::vector<Real> default_radial_grid(const HartogsParams& params,
                                      const ComplexVector& z, int count = 16);

}  // namespace ch
