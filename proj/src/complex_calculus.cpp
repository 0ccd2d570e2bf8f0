#include "ch/complex_calculus.hpp"

#include <cmath>

#include "ch/errors.hpp"

namespace ch {

namespace {

constexpr Real kStepMin = 1e-6;
constexpr Real kStepMax = 1e-1;

void check_stencil(const Stencil& stencil) {
  if (!(stencil.step >= kStepMin && stencil.step <= kStepMax))
    throw Error(errc::grid, "stencil step outside [1e-6, 1e-1]");
}

// Perturbs the real part (axis 0) or imaginary part (axis 1) of coordinate j.
ComplexVector shift(const ComplexVector& z, int j, int axis, Real h) {
  ComplexVector out = z;
  out(j) += (axis == 0) ? Complex(h, 0.0) : Complex(0.0, h);
  return out;
}

Real eval_checked(const RealField& f, const ComplexVector& z) {
  const Real value = f(z);
  if (!std::isfinite(value))
    throw Error(errc::domain_violation, "potential not finite at a stencil node");
  return value;
}

// Central second derivative along one real axis.
Real second_same(const RealField& f, const ComplexVector& z, int j, int axis,
                 Real h, Real f0) {
  const Real fp = eval_checked(f, shift(z, j, axis, h));
  const Real fm = eval_checked(f, shift(z, j, axis, -h));
  return (fp - 2.0 * f0 + fm) / (h * h);
}

// 4-point mixed second derivative along two distinct real axes.
Real second_mixed(const RealField& f, const ComplexVector& z, int j, int aj,
                  int k, int ak, Real h) {
  const Real fpp = eval_checked(f, shift(shift(z, j, aj, h), k, ak, h));
  const Real fpm = eval_checked(f, shift(shift(z, j, aj, h), k, ak, -h));
  const Real fmp = eval_checked(f, shift(shift(z, j, aj, -h), k, ak, h));
  const Real fmm = eval_checked(f, shift(shift(z, j, aj, -h), k, ak, -h));
  return (fpp - fpm - fmp + fmm) / (4.0 * h * h);
}

ComplexMatrix mixed_hessian_step(const RealField& f, const ComplexVector& z, Real h) {
  const int d = static_cast<int>(z.size());
  const Real f0 = eval_checked(f, z);
  ComplexMatrix hess(d, d);
  for (int j = 0; j < d; ++j) {
    const Real fxx = second_same(f, z, j, 0, h, f0);
    const Real fyy = second_same(f, z, j, 1, h, f0);
    hess(j, j) = Complex(0.25 * (fxx + fyy), 0.0);
    for (int k = j + 1; k < d; ++k) {
      const Real fxx2 = second_mixed(f, z, j, 0, k, 0, h);
      const Real fyy2 = second_mixed(f, z, j, 1, k, 1, h);
      const Real fxy = second_mixed(f, z, j, 0, k, 1, h);
      const Real fyx = second_mixed(f, z, j, 1, k, 0, h);
      hess(j, k) = 0.25 * Complex(fxx2 + fyy2, fxy - fyx);
      hess(k, j) = std::conj(hess(j, k));
    }
  }
  return hess;
}

ComplexVector gradient_step(const RealField& f, const ComplexVector& z, Real h) {
  const int d = static_cast<int>(z.size());
  ComplexVector grad(d);
  for (int j = 0; j < d; ++j) {
    const Real dx = (eval_checked(f, shift(z, j, 0, h)) -
                     eval_checked(f, shift(z, j, 0, -h))) / (2.0 * h);
    const Real dy = (eval_checked(f, shift(z, j, 1, h)) -
                     eval_checked(f, shift(z, j, 1, -h))) / (2.0 * h);
    grad(j) = 0.5 * Complex(dx, -dy);
  }
  return grad;
}

template <typename T, typename Fn>
T richardson_o2(const Fn& at_step, Real h, bool enabled) {
  const T coarse = at_step(h);
  if (!enabled) return coarse;
  const T fine = at_step(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

ComplexVector complex_gradient(const RealField& f, const ComplexVector& z,
                               const Stencil& stencil) {
  check_stencil(stencil);
  return richardson_o2<ComplexVector>(
      [&](Real h) { return gradient_step(f, z, h); }, stencil.step, stencil.richardson);
}

ComplexMatrix mixed_hessian(const RealField& f, const ComplexVector& z,
                            const Stencil& stencil) {
  check_stencil(stencil);
  ComplexMatrix hess = richardson_o2<ComplexMatrix>(
      [&](Real h) { return mixed_hessian_step(f, z, h); }, stencil.step,
      stencil.richardson);
  return 0.5 * (hess + hess.adjoint().eval());
}

ComplexMatrix complex_hessian_log(const RealField& f, const ComplexVector& z,
                                  const Stencil& stencil) {
  auto log_f = [&f](const ComplexVector& v) {
    const Real value = f(v);
    if (value <= 0.0)
      throw Error(errc::domain_violation, "potential nonpositive at a stencil node");
    return std::log(value);
  };
  return mixed_hessian(log_f, z, stencil);
}

ComplexMatrix metric_base(const DomainSpec& spec, Real mu, const ComplexVector& z,
                          const Stencil& stencil) {
  if (mu <= 0.0) throw Error(errc::hypothesis_violation, "mu must be positive");
  if (!contains(spec, z))
    throw Error(errc::outside_domain, "metric requested outside the domain");
  auto n_mu = [&](const ComplexVector& v) {
    return std::pow(generic_norm(spec, v), mu);
  };
  ComplexMatrix g = -0.5 * complex_hessian_log(n_mu, z, stencil);
  if (detail::min_eigenvalue(g) <= 0.0)
    throw Error(errc::domain_violation,
                "base metric not positive definite at an interior point");
  return g;
}

std::pair<Real, Real> det_identity_residual(const DomainSpec& spec, Real mu,
                                            const std::vector<ComplexVector>& samples,
                                            const Stencil& stencil) {
  if (mu <= 0.0) throw Error(errc::hypothesis_violation, "mu must be positive");
  if (samples.empty()) throw Error(errc::grid, "no samples");
  std::vector<Real> values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ComplexMatrix g = metric_base(spec, mu, samples[i], stencil);
    const Real det = g.determinant().real();
    values[i] = det * std::pow(generic_norm(spec, samples[i]), spec.genus);
  }
  const Real mean = pairwise_sum(values) / static_cast<Real>(values.size());
  Real deviation = 0.0;
  for (const Real c : values)
    deviation = std::max(deviation, std::abs(c / mean - 1.0));
  return {mean, deviation};
}

Real boundary_density_A(const DomainSpec& spec, Real mu, const ComplexVector& z,
                        const Stencil& stencil) {
  if (mu <= 0.0) throw Error(errc::hypothesis_violation, "mu must be positive");
  if (!contains(spec, z))
    throw Error(errc::outside_domain, "density requested outside the domain");
  auto n_mu = [&](const ComplexVector& v) {
    return std::pow(generic_norm(spec, v), mu);
  };
  const Real f = n_mu(z);
  const ComplexVector grad = complex_gradient(n_mu, z, stencil);
  const ComplexMatrix hess = mixed_hessian(n_mu, z, stencil);
  // Gtilde = (grad gradbar^T - f hess) / f^2, a matrix-determinant-lemma
  // rearrangement of -d dbar log N^mu.
  const ComplexMatrix gtilde =
      (grad * grad.adjoint() - f * hess) / (f * f);
  const int d = spec.dim;
  const Real value = std::pow(f, d + 1) * gtilde.determinant().real();
  if (!(value > 0.0))
    throw Error(errc::domain_violation, "boundary density not positive");
  return value;
}

namespace detail {

Real min_eigenvalue(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace detail

}  // namespace ch
