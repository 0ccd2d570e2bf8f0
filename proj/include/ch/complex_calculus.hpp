// Finite-difference complex derivatives of real-valued potentials, the base
// Kahler metric and the determinant identities it satisfies.
//
// All second derivatives come from the real 4-point identities
//   d^2/dz_j dzbar_j = (d^2/dx^2 + d^2/dy^2) / 4
//   d^2/dz_j dzbar_k = (f_xx' + f_yy' + i (f_xy' - f_yx')) / 4   (j != k)
// with central differences per real coordinate and optional one-level
// Richardson extrapolation.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ch/domain.hpp"
#include "ch/types.hpp"

namespace ch {

struct Stencil {
  Real step = 1e-3;
  bool richardson = true;
};

using RealField = std::function<Real(const ComplexVector&)>;

/// Holomorphic gradient (df/dz_j)_j of a real-valued f.
ComplexVector complex_gradient(const RealField& f, const ComplexVector& z,
                               const Stencil& stencil);

/// Mixed Hessian (d^2 f / dz_j dzbar_k)_{jk} of a real-valued f,
/// Hermitian-symmetrized before return.
ComplexMatrix mixed_hessian(const RealField& f, const ComplexVector& z,
                            const Stencil& stencil);

/// Mixed Hessian of log f; requires f > 0 on the stencil.
ComplexMatrix complex_hessian_log(const RealField& f, const ComplexVector& z,
                                  const Stencil& stencil);

/// Base metric g = -1/2 d dbar log N^mu, positive definite on the interior.
ComplexMatrix metric_base(const DomainSpec& spec, Real mu, const ComplexVector& z,
                          const Stencil& stencil);

/// Evaluates c(z) = det(g(z)) N(z)^genus on every sample point and returns
/// (mean of c, max_z |c(z)/mean - 1|). The z-independence of c is the
/// verifiable content; the constant itself depends on the metric convention.
std::pair<Real, Real> det_identity_residual(const DomainSpec& spec, Real mu,
                                            const std::vector<ComplexVector>& samples,
                                            const Stencil& stencil);

/// Boundary volume density A(z) = N^{mu(d+1)} det(Gtilde) with
/// Gtilde_{jk} = (N^mu_j N^mu_kbar - N^mu_{jkbar} N^mu) / N^{2mu},
/// i.e. Gtilde = -d dbar log N^mu assembled from derivatives of N^mu itself.
Real boundary_density_A(const DomainSpec& spec, Real mu, const ComplexVector& z,
                        const Stencil& stencil);

namespace detail {

/// Smallest eigenvalue of a Hermitian matrix (positive-definiteness checks).
Real min_eigenvalue(const ComplexMatrix& h);

}  // namespace detail

}  // namespace ch
