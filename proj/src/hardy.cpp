#include "ch/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ch/complex_calculus.hpp"
#include "ch/errors.hpp"
#include "ch/gamma.hpp"
#include "ch/tyz.hpp"

namespace ch {

namespace {

constexpr Real kPi = std::numbers::pi;

Complex monomial_value(const std::vector<int>& alpha, const ComplexVector& z) {
  Complex acc = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int e = 0; e < alpha[i]; ++e) acc *= z(static_cast<Eigen::Index>(i));
  return acc;
}

void check_margin(const DomainSpec& spec, Real mu, int m) {
  if (!(mu * m > spec.genus - 1.0))
    throw Error(errc::hypothesis_violation,
                "m must exceed (genus - 1)/mu = " +
                    std::to_string((spec.genus - 1.0) / mu));
}

}  // namespace

MonomialBasis make_monomial_basis(int dim, int cutoff) {
  MonomialBasis basis;
  basis.cutoff = cutoff;
  basis.exponents = monomial_exponents(dim, cutoff);
  return basis;
}

GramFactor base_gram(const DomainSpec& spec, Real mu, int m, const MonomialBasis& basis,
                     const SampleSet& quad, const Stencil& stencil) {
  check_margin(spec, mu, m);
  GramFactor factor;
  factor.basis = basis;
  factor.m = m;
  factor.mu = mu;
  const Eigen::Index n_mon = static_cast<Eigen::Index>(basis.exponents.size());
  const int d = spec.dim;

  if (quad.kind == SampleSet::Kind::radial) {
    if (spec.rank != 1)
      throw Error(errc::unsupported, "radial Gram needs a rank-1 base");
    // Diagonal norms mu^d alpha! / rising(mu m - d, d + |alpha|); the radial
    // Beta integral is reproduced by the Gauss-Legendre nodes when the weight
    // exponent mu m - d - 1 is a nonnegative integer, and taken in closed
    // form otherwise.
    const Real weight_exp = mu * m - d - 1.0;
    const bool polynomial_weight =
        std::abs(weight_exp - std::round(weight_exp)) < 1e-12 && weight_exp > -0.5;
    const int needed_degree = d - 1 + basis.cutoff +
                              (polynomial_weight ? static_cast<int>(std::round(weight_exp)) : 0);
    const bool use_nodes =
        polynomial_weight && 2 * static_cast<int>(quad.size()) - 1 >= needed_degree;

    std::vector<Real> moment(static_cast<std::size_t>(d + basis.cutoff), 0.0);
    if (use_nodes) {
      for (std::size_t i = 0; i < quad.size(); ++i) {
        const Real t = quad.points[i](0).real();
        const Real base = quad.weights[i] * std::pow(1.0 - t, weight_exp);
        Real t_pow = std::pow(t, d - 1);
        for (int k = 0; k <= basis.cutoff; ++k) {
          moment[static_cast<std::size_t>(d - 1 + k)] += base * t_pow;
          t_pow *= t;
        }
      }
    }

    Eigen::VectorXd diag(n_mon);
    for (Eigen::Index a = 0; a < n_mon; ++a) {
      const auto& alpha = basis.exponents[static_cast<std::size_t>(a)];
      int total = 0;
      Real alpha_fact = 1.0;
      for (const int e : alpha) {
        total += e;
        alpha_fact *= factorial(e);
      }
      Real value;
      if (use_nodes) {
        value = std::pow(mu, d) * alpha_fact / factorial(d - 1 + total) *
                moment[static_cast<std::size_t>(d - 1 + total)];
      } else {
        value = std::pow(mu, d) * alpha_fact / rising_factorial(mu * m - d, d + total);
      }
      if (!(value > 0.0))
        throw Error(errc::quadrature_failure, "nonpositive Gram diagonal");
      diag(a) = value;
    }
    factor.transform = diag.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal();
    factor.condition_number = diag.maxCoeff() / diag.minCoeff();
    return factor;
  }

  // Monte Carlo assembly: Gram = V^H V with rows scaled by the square root
  // of weight * N^{mu m} * 2^d det(metric_base) / pi^d.
  const Eigen::Index n_smp = static_cast<Eigen::Index>(quad.size());
  ComplexMatrix scaled(n_smp, n_mon);
  const Real pi_power = std::pow(kPi, d);
  for (Eigen::Index i = 0; i < n_smp; ++i) {
    const ComplexVector& z = quad.points[i];
    const Real n_z = generic_norm(spec, z);
    const ComplexMatrix g = metric_base(spec, mu, z, stencil);
    const Real density = std::pow(2.0, d) * g.determinant().real();
    const Real c = quad.weights[i] * std::pow(n_z, mu * m) * density / pi_power;
    if (!(c >= 0.0))
      throw Error(errc::quadrature_failure, "negative quadrature weight");
    const Real root = std::sqrt(c);
    for (Eigen::Index a = 0; a < n_mon; ++a)
      scaled(i, a) = root * monomial_value(basis.exponents[static_cast<std::size_t>(a)], z);
  }
  const ComplexMatrix gram = scaled.adjoint() * scaled;
  for (Eigen::Index a = 0; a < n_mon; ++a)
    if (!(gram(a, a).real() > 0.0))
      throw Error(errc::quadrature_failure, "nonpositive Gram diagonal");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const Real lo = solver.eigenvalues().minCoeff();
  const Real hi = solver.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw Error(errc::ill_conditioned, "Gram condition number above 1e12");

  Eigen::LLT<ComplexMatrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw Error(errc::ill_conditioned, "Cholesky factorization failed");
  factor.transform = ComplexMatrix(llt.matrixL())
                         .triangularView<Eigen::Lower>()
                         .solve(ComplexMatrix::Identity(n_mon, n_mon));
  factor.condition_number = hi / lo;
  return factor;
}

Real epsilon_base(const DomainSpec& spec, Real mu, int m, const ComplexVector& z,
                  const GramFactor& gram) {
  if (gram.m != m || gram.mu != mu)
    throw Error(errc::grid, "Gram factor built for different (mu, m)");
  const Eigen::Index n_mon = static_cast<Eigen::Index>(gram.basis.exponents.size());
  ComplexVector phi(n_mon);
  for (Eigen::Index a = 0; a < n_mon; ++a)
    phi(a) = monomial_value(gram.basis.exponents[static_cast<std::size_t>(a)], z);
  const ComplexVector ortho = gram.transform * phi;
  return std::pow(generic_norm(spec, z), mu * m) * ortho.squaredNorm();
}

namespace {

SampleSet quad_for_base(const DomainSpec& spec, int cutoff, int max_m, Real mu) {
  if (spec.rank == 1) {
    const int degree =
        spec.dim - 1 + cutoff + std::max(0, static_cast<int>(std::ceil(mu * max_m)));
    return radial_rule(spec, degree);
  }
  return sample_interior(spec, 20000, 0x5eed0001ull);
}

}  // namespace

std::vector<Real> fit_b_coefficients(const DomainSpec& spec, Real mu,
                                     const std::vector<ComplexVector>& z_samples,
                                     const std::vector<int>& m_grid, int cutoff) {
  const int d = spec.dim;
  if (static_cast<int>(m_grid.size()) != d + 1)
    throw Error(errc::grid, "need d + 1 = " + std::to_string(d + 1) + " m nodes");
  if (z_samples.empty()) throw Error(errc::grid, "no z samples");

  const MonomialBasis basis = make_monomial_basis(d, cutoff);
  const int max_m = *std::max_element(m_grid.begin(), m_grid.end());
  const SampleSet quad = quad_for_base(spec, cutoff, max_m, mu);

  std::vector<GramFactor> grams;
  grams.reserve(m_grid.size());
  for (const int m : m_grid) grams.push_back(base_gram(spec, mu, m, basis, quad));

  Matrix system(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int l = 0; l <= d; ++l) system(i, l) = binomial(m_grid[i] + l, l);

  Matrix fits(d + 1, static_cast<Eigen::Index>(z_samples.size()));
  for (std::size_t s = 0; s < z_samples.size(); ++s) {
    Vector eps(d + 1);
    for (int i = 0; i <= d; ++i)
      eps(i) = epsilon_base(spec, mu, m_grid[i], z_samples[s], grams[i]);
    fits.col(static_cast<Eigen::Index>(s)) = system.colPivHouseholderQr().solve(eps);
  }

  const Vector mean = fits.rowwise().mean();
  const Real scale = std::max(mean.cwiseAbs().maxCoeff(), 1e-300);
  const Real deviation =
      (fits.colwise() - mean).cwiseAbs().maxCoeff() / scale;
  if (deviation > 1e-3)
    throw Error(errc::z_dependence,
                "b_l fit varies across z samples (relative deviation " +
                    std::to_string(deviation) + "); raise the cutoff");
  return {mean.data(), mean.data() + mean.size()};
}

std::vector<Real> default_b_coefficients(const HartogsParams& params, int cutoff) {
  const DomainSpec& spec = params.base;
  const int d = spec.dim;
  std::vector<ComplexVector> z_samples;
  for (int s = 0; s < 3; ++s) {
    ComplexVector z(d);
    for (int j = 0; j < d; ++j) {
      const Real radius = (0.10 + 0.06 * s + 0.04 * (j % 2)) / std::sqrt(Real(d));
      const Real angle = 0.7 * (s + 1) + 1.3 * j;
      z(j) = radius * Complex(std::cos(angle), std::sin(angle));
    }
    z_samples.push_back(std::move(z));
  }
  const int m0 =
      static_cast<int>(std::floor((spec.genus - 1.0) / params.mu)) + 1;
  std::vector<int> m_grid(d + 1);
  for (int i = 0; i <= d; ++i) m_grid[i] = m0 + i;
  return fit_b_coefficients(spec, params.mu, z_samples, m_grid, cutoff);
}

Complex hat_map_value(const DomainSpec& spec, Real mu, int m, const BaseSection& s,
                      const HartogsPoint& v) {
  if (v.w.size() != 1)
    throw Error(errc::unsupported, "hat map is defined for d0 = 1");
  const Real n_z = generic_norm(spec, v.z);
  const Real defect = std::pow(n_z, mu) - v.w.squaredNorm();
  if (std::abs(defect) > 1e-9)
    throw Error(errc::off_boundary, "point is not on the smooth boundary");
  const int d = spec.dim;
  const Real prefactor =
      std::pow(2.0, -0.5 * d) * std::pow(n_z, -0.5 * mu * (d + 1));
  return prefactor * std::pow(v.w(0), m) * s(v.z);
}

Real isometry_ratio(const DomainSpec& spec, Real mu, int m, const BaseSection& s,
                    const std::vector<BoundarySample>& boundary_samples,
                    const SampleSet& base_quad, const Stencil& stencil) {
  check_margin(spec, mu, m);
  const int d = spec.dim;
  HartogsParams params{spec, mu, 1};

  std::vector<Real> boundary_terms(boundary_samples.size());
  for (std::size_t i = 0; i < boundary_samples.size(); ++i) {
    const HartogsPoint v = boundary_point(params, boundary_samples[i]);
    const Complex lift = hat_map_value(spec, mu, m, s, v);
    boundary_terms[i] = boundary_samples[i].weight * std::norm(lift);
  }
  const Real numerator =
      pairwise_sum(boundary_terms) / (2.0 * std::pow(kPi, d + 1));

  std::vector<Real> base_terms(base_quad.size());
  for (std::size_t i = 0; i < base_quad.size(); ++i) {
    const ComplexVector& z = base_quad.points[i];
    const Real n_z = generic_norm(spec, z);
    const ComplexMatrix g = metric_base(spec, mu, z, stencil);
    const Real density = std::pow(2.0, d) * g.determinant().real();
    base_terms[i] = base_quad.weights[i] * std::pow(n_z, mu * m) *
                    std::norm(s(z)) * density / std::pow(kPi, d);
  }
  const Real denominator = pairwise_sum(base_terms);
  if (!(denominator > 0.0))
    throw Error(errc::quadrature_failure, "base norm vanished");
  return numerator / denominator;
}

Real szego_closed(const HartogsParams& params, const std::vector<Real>& b,
                  const HartogsPoint& v) {
  if (params.d0 != 1)
    throw Error(errc::unsupported, "Szego evaluation is defined for d0 = 1");
  const int d = params.base.dim;
  if (static_cast<int>(b.size()) != d + 1)
    throw Error(errc::grid, "need d + 1 coefficients");
  const Real n_mu = std::pow(generic_norm(params.base, v.z), params.mu);
  const Real x = v.w.squaredNorm() / n_mu;
  if (!(x < 1.0)) throw Error(errc::outside_domain, "point outside M");
  Real sum = 0.0;
  for (int l = 0; l <= d; ++l) sum += b[l] * std::pow(1.0 - x, -(l + 1));
  return std::pow(2.0, -d) * std::pow(n_mu, -(d + 1)) * sum;
}

SzegoEvaluation szego_series(const HartogsParams& params, const std::vector<Real>& b,
                             const HartogsPoint& v, int m_cutoff, int degree_cutoff) {
  if (params.d0 != 1)
    throw Error(errc::unsupported, "Szego evaluation is defined for d0 = 1");
  const int d = params.base.dim;
  if (static_cast<int>(b.size()) != d + 1)
    throw Error(errc::grid, "need d + 1 coefficients");

  SzegoEvaluation eval;
  eval.point = v;
  eval.m_cutoff = m_cutoff;
  eval.degree_cutoff = degree_cutoff;

  const Real n_mu = std::pow(generic_norm(params.base, v.z), params.mu);
  const Real x = v.w.squaredNorm() / n_mu;
  if (!(x < 1.0)) throw Error(errc::outside_domain, "point outside M");
  const Real prefactor = std::pow(2.0, -d) * std::pow(n_mu, -(d + 1));

  // epsilon(m) extended by its polynomial law sum_l b_l C(m+l, l); the
  // binomials are updated incrementally in m.
  std::vector<Real> binom(d + 1, 1.0);  // C(m+l, l) at current m
  auto poly = [&]() {
    Real acc = 0.0;
    for (int l = 0; l <= d; ++l) acc += b[l] * binom[l];
    return acc;
  };

  Real partial = 0.0;
  Real x_pow = 1.0;
  Real last_poly = 0.0;
  for (int m = 0; m <= m_cutoff; ++m) {
    if (m > 0) {
      for (int l = 0; l <= d; ++l)
        binom[l] *= static_cast<Real>(m + l) / static_cast<Real>(m);
      x_pow *= x;
    }
    last_poly = poly();
    partial += x_pow * last_poly;
  }
  eval.series_value = prefactor * partial;

  // Geometric remainder with the polynomial growth of epsilon folded into
  // the effective ratio.
  Real tail = 0.0;
  if (x > 0.0) {
    std::vector<Real> next_binom = binom;
    for (int l = 0; l <= d; ++l)
      next_binom[l] *= static_cast<Real>(m_cutoff + 1 + l) /
                       static_cast<Real>(m_cutoff + 1);
    Real next_poly = 0.0;
    for (int l = 0; l <= d; ++l) next_poly += b[l] * next_binom[l];
    Real ratio = x;
    if (std::abs(last_poly) > 0.0)
      ratio = std::min(0.999999, x * std::max(1.0, std::abs(next_poly / last_poly)));
    tail = std::abs(x_pow * x * next_poly) / (1.0 - ratio);
  }
  eval.tail_estimate = prefactor * tail;

  if (eval.tail_estimate > 1e-8 * std::max(std::abs(eval.series_value), 1e-300))
    throw Error(errc::near_boundary,
                "series tail bound not met at m_cutoff = " + std::to_string(m_cutoff) +
                    "; use the closed form");
  eval.closed_value = szego_closed(params, b, v);
  return eval;
}

SzegoEvaluation szego_evaluate(const HartogsParams& params, const HartogsPoint& v,
                               int m_cutoff, int degree_cutoff) {
  const std::vector<Real> b = default_b_coefficients(params, degree_cutoff);
  return szego_series(params, b, v, m_cutoff, degree_cutoff);
}

LogTermFit fit_radial_profile(const std::vector<Real>& t, const std::vector<Real>& s,
                              int top_power) {
  const std::size_t n = t.size();
  if (n != s.size() || n < static_cast<std::size_t>(top_power) + 3)
    throw Error(errc::grid, "radial grid too small for the fit basis");
  const Eigen::Index cols = top_power + 2;  // inverse powers, log, constant
  Matrix design(static_cast<Eigen::Index>(n), cols);
  for (std::size_t i = 0; i < n; ++i) {
    for (int p = 0; p < top_power; ++p)
      design(static_cast<Eigen::Index>(i), p) = std::pow(t[i], -(top_power - p));
    design(static_cast<Eigen::Index>(i), top_power) = std::log(t[i]);
    design(static_cast<Eigen::Index>(i), top_power + 1) = 1.0;
  }
  const Vector scale = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!(scale(c) > 0.0)) throw Error(errc::grid, "degenerate fit column");
  const Matrix scaled = design * scale.cwiseInverse().asDiagonal();
  const Eigen::Map<const Vector> rhs(s.data(), static_cast<Eigen::Index>(n));
  const auto qr = scaled.colPivHouseholderQr();
  if (qr.rank() < cols)
    throw Error(errc::grid, "fit matrix singular; grid too clustered");
  const Vector coeffs = qr.solve(rhs).cwiseQuotient(scale);

  LogTermFit fit;
  fit.a_estimate = coeffs(0);
  fit.b_estimate = coeffs(top_power);
  fit.residual = (design * coeffs - rhs).norm() / std::max(rhs.norm(), 1e-300);
  return fit;
}

LogTermFit log_term_fit(const HartogsParams& params, const std::vector<Real>& b,
                        const ComplexVector& z, const std::vector<Real>& radial_grid) {
  if (params.d0 != 1)
    throw Error(errc::unsupported, "log-term fit is defined for d0 = 1");
  if (radial_grid.size() < 6)
    throw Error(errc::grid, "need at least 6 radial nodes");
  const auto [lo, hi] = std::minmax_element(radial_grid.begin(), radial_grid.end());
  if (!(*lo > 0.0) || *hi / *lo < 10.0)
    throw Error(errc::grid, "radial grid must span at least a decade");

  const Real n_mu = std::pow(generic_norm(params.base, z), params.mu);
  std::vector<Real> values;
  values.reserve(radial_grid.size());
  for (const Real t : radial_grid) {
    if (!(t < n_mu))
      throw Error(errc::grid, "radial value exceeds N^mu at this base point");
    HartogsPoint v;
    v.z = z;
    v.w = ComplexVector(1);
    v.w(0) = std::sqrt(n_mu - t);  // rho(v) = t
    values.push_back(szego_closed(params, b, v));
  }
  return fit_radial_profile(radial_grid, values, params.base.dim + 1);
}

LogTermFit log_term_fit(const HartogsParams& params, const ComplexVector& z,
                        const std::vector<Real>& radial_grid) {
  return log_term_fit(params, default_b_coefficients(params), z, radial_grid);
}

std::vector<Real> default_radial_grid(const HartogsParams& params,
                                      const ComplexVector& z, int count) {
  const Real n_mu = std::pow(generic_norm(params.base, z), params.mu);
  std::vector<Real> grid(count);
  for (int i = 0; i < count; ++i) {
    const Real frac = static_cast<Real>(i) / (count - 1);
    grid[i] = n_mu * std::pow(10.0, -3.0 + 2.0 * frac);
  }
  return grid;
}

}  // namespace ch
