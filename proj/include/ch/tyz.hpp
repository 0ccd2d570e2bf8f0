// The finite distortion-function expansion for Cartan-Hartogs domains:
// the Gamma-ratio product Xtilde, its forward differences, the closed-form
// distortion T_m, polynomial coefficient extraction, and a brute-force
// coherent-state oracle built from monomial Gram matrices.
#pragma once

#include <vector>

#include "ch/hartogs.hpp"
#include "ch/quadrature.hpp"
#include "ch/types.hpp"

namespace ch {

/// Product over l = 1..r of
///   Gamma(mu s - genus + 2 - (l+1)a/2 + b + r a) /
///   Gamma(mu s - genus + 1 + (l-1)a/2).
/// The two arguments always differ by the positive integer 1 + b + a(r - l),
/// so each factor is evaluated as a rising factorial and never hits a pole.
Real x_tilde(const DomainSpec& spec, Real mu, Real s);

/// k-th forward difference sum_{j=0}^{k} C(k,j) (-1)^j Xtilde(d - j).
Real dk_x_tilde(const DomainSpec& spec, Real mu, int d, int k);

/// Smallest integer m satisfying m > max{d + d0, (genus - 1)/mu}.
int min_admissible_m(const HartogsParams& params);

/// Closed-form distortion
///   T_m = mu^{-d} sum_k [D^k Xtilde(d)/k!] (1 - ||w||^2/N^mu)^{d-k}
///         Gamma(m-d+k)/Gamma(m-d-d0).
Real kempf_distortion(const HartogsParams& params, int m, const HartogsPoint& v);

struct DistortionReport {
  HartogsParams params;
  std::vector<int> m_grid;
  HartogsPoint point;
  std::vector<Real> values;        // T_m on m_grid
  std::vector<Real> coefficients;  // a_0..a_{d+d0}, a_j multiplies m^{(d+d0)-j}
  Real interpolation_residual = 0.0;
};

/// Interpolates T_m on d + d0 + 1 nodes by a degree-(d + d0) polynomial and
/// reports monomial coefficients plus the held-out relative residual.
DistortionReport tyz_coefficients(const HartogsParams& params, const HartogsPoint& v,
                                  std::vector<int> m_grid,
                                  const std::vector<int>& check_grid);

/// Default grids: the d + d0 + 1 smallest admissible integers and the next 3.
std::vector<int> default_m_grid(const HartogsParams& params);
std::vector<int> default_check_grid(const HartogsParams& params);

/// Coherent-state oracle: orthonormalizes monomials z^alpha w^beta of total
/// degree <= cutoff under the normalized inner product
///   <f, g> = int_M rho^m f gbar volume_density dLambda / pi^{d+d0}
/// over the given quadrature and evaluates rho^m sum_j |s_j(v)|^2.
Real rawnsley_oracle(const HartogsParams& params, int m, const HartogsPoint& v,
                     int degree_cutoff, const SampleSet& quad);

/// Exact-quadrature variant for mu = 1 rank-1 bases, where M itself is a
/// complex ball and all monomial norms are products of Beta integrals
/// reproduced exactly by the radial Gauss-Legendre rule.
Real rawnsley_oracle_radial(const HartogsParams& params, int m, const HartogsPoint& v,
                            int degree_cutoff);

/// Multi-indices of total degree <= cutoff in `vars` variables, lex order.
std::vector<std::vector<int>> monomial_exponents(int vars, int cutoff);

}  // namespace ch
