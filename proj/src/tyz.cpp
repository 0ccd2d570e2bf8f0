#include "ch/tyz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ch/errors.hpp"
#include "ch/gamma.hpp"

namespace ch {

Real x_tilde(const DomainSpec& spec, Real mu, Real s) {
  const int r = spec.rank;
  const Real a = spec.mult_a, b = spec.mult_b, genus = spec.genus;
  Real prod = 1.0;
  for (int l = 1; l <= r; ++l) {
    const Real lower = mu * s - genus + 1.0 + (l - 1) * a / 2.0;
    const int length = static_cast<int>(std::lround(1.0 + b + a * (r - l)));
    prod *= rising_factorial(lower, length);
  }
  return prod;
}

Real dk_x_tilde(const DomainSpec& spec, Real mu, int d, int k) {
  if (k < 0 || k > d) throw Error(errc::grid, "k must lie in [0, d]");
  Real sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    const Real sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += binomial(k, j) * sign * x_tilde(spec, mu, static_cast<Real>(d - j));
  }
  return sum;
}

int min_admissible_m(const HartogsParams& params) {
  const Real bound = std::max(static_cast<Real>(params.base.dim + params.d0),
                              (params.base.genus - 1.0) / params.mu);
  return static_cast<int>(std::floor(bound)) + 1;
}

Real kempf_distortion(const HartogsParams& params, int m, const HartogsPoint& v) {
  const int d = params.base.dim;
  const int d0 = params.d0;
  const Real bound = std::max(static_cast<Real>(d + d0),
                              (params.base.genus - 1.0) / params.mu);
  if (!(static_cast<Real>(m) > bound))
    throw Error(errc::hypothesis_violation,
                "m must exceed max{d + d0, (genus-1)/mu} = " + std::to_string(bound));
  const Real r = rho(params, v);
  if (r <= 0.0) throw Error(errc::outside_domain, "point outside M");

  const Real n_mu = std::pow(generic_norm(params.base, v.z), params.mu);
  const Real one_minus_x = 1.0 - v.w.squaredNorm() / n_mu;
  Real sum = 0.0;
  for (int k = 0; k <= d; ++k) {
    const Real gamma_part = rising_factorial(static_cast<Real>(m - d - d0), d0 + k);
    sum += dk_x_tilde(params.base, params.mu, d, k) / factorial(k) *
           std::pow(one_minus_x, d - k) * gamma_part;
  }
  return sum / std::pow(params.mu, d);
}

std::vector<int> default_m_grid(const HartogsParams& params) {
  const int m0 = min_admissible_m(params);
  std::vector<int> grid(params.base.dim + params.d0 + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = m0 + static_cast<int>(i);
  return grid;
}

std::vector<int> default_check_grid(const HartogsParams& params) {
  const int next = default_m_grid(params).back() + 1;
  return {next, next + 1, next + 2};
}

namespace {

// Divided-difference table, then expansion of the Newton form into monomial
// coefficients (ascending powers).
std::vector<Real> interpolate_monomial(const std::vector<Real>& nodes,
                                       const std::vector<Real>& values) {
  const std::size_t q = nodes.size();
  std::vector<Real> table = values;
  std::vector<Real> newton(q);
  newton[0] = table[0];
  for (std::size_t level = 1; level < q; ++level) {
    for (std::size_t i = 0; i + level < q; ++i)
      table[i] = (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i]);
    newton[level] = table[0];
  }
  std::vector<Real> mono{newton[q - 1]};
  for (std::size_t k = q - 1; k-- > 0;) {
    std::vector<Real> next(mono.size() + 1, 0.0);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      next[i + 1] += mono[i];
      next[i] -= nodes[k] * mono[i];
    }
    next[0] += newton[k];
    mono = std::move(next);
  }
  return mono;
}

Real horner(const std::vector<Real>& ascending, Real x) {
  Real acc = 0.0;
  for (std::size_t i = ascending.size(); i-- > 0;) acc = acc * x + ascending[i];
  return acc;
}

}  // namespace

DistortionReport tyz_coefficients(const HartogsParams& params, const HartogsPoint& v,
                                  std::vector<int> m_grid,
                                  const std::vector<int>& check_grid) {
  const std::size_t q = static_cast<std::size_t>(params.base.dim + params.d0 + 1);
  std::sort(m_grid.begin(), m_grid.end());
  if (m_grid.size() != q ||
      std::adjacent_find(m_grid.begin(), m_grid.end()) != m_grid.end())
    throw Error(errc::grid, "need " + std::to_string(q) + " distinct m nodes");

  DistortionReport report;
  report.params = params;
  report.m_grid = m_grid;
  report.point = v;

  std::vector<Real> nodes(q);
  report.values.resize(q);
  for (std::size_t i = 0; i < q; ++i) {
    nodes[i] = static_cast<Real>(m_grid[i]);
    report.values[i] = kempf_distortion(params, m_grid[i], v);
  }
  const std::vector<Real> mono = interpolate_monomial(nodes, report.values);

  report.coefficients.resize(q);
  for (std::size_t j = 0; j < q; ++j) report.coefficients[j] = mono[q - 1 - j];

  Real residual = 0.0;
  for (const int m : check_grid) {
    const Real exact = kempf_distortion(params, m, v);
    const Real predicted = horner(mono, static_cast<Real>(m));
    residual = std::max(residual, std::abs(predicted - exact) /
                                      std::max(std::abs(exact), 1e-300));
  }
  report.interpolation_residual = residual;
  return report;
}

std::vector<std::vector<int>> monomial_exponents(int vars, int cutoff) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(vars, 0);
  // Depth-first enumeration emits lexicographic order directly.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == vars) {
      out.push_back(current);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      current[pos] = e;
      self(self, pos + 1, remaining - e);
    }
    current[pos] = 0;
  };
  rec(rec, 0, cutoff);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Complex monomial_value(const std::vector<int>& alpha, const ComplexVector& v) {
  Complex acc = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int e = 0; e < alpha[i]; ++e) acc *= v(static_cast<Eigen::Index>(i));
  return acc;
}

}  // namespace

Real rawnsley_oracle(const HartogsParams& params, int m, const HartogsPoint& v,
                     int degree_cutoff, const SampleSet& quad) {
  const int n = params.base.dim + params.d0;
  if (!(m > n))
    throw Error(errc::hypothesis_violation, "m must exceed d + d0");
  const auto exponents = monomial_exponents(n, degree_cutoff);
  const Eigen::Index n_mon = static_cast<Eigen::Index>(exponents.size());
  const Eigen::Index n_smp = static_cast<Eigen::Index>(quad.size());
  const Real pi_power = std::pow(std::numbers::pi, n);

  // Rows scaled by sqrt(weight * rho^m * density / pi^n); Gram = V^H V.
  // The density stencil shrinks with rho so it stays inside M; nodes within
  // a 1e-5 shell of the fiber boundary are dropped (negligible mass).
  ComplexMatrix scaled = ComplexMatrix::Zero(n_smp, n_mon);
  for (Eigen::Index i = 0; i < n_smp; ++i) {
    const HartogsPoint p = split_point(params, quad.points[i]);
    const Real r = rho(params, p);
    if (r <= 0.0)
      throw Error(errc::quadrature_failure, "quadrature node outside M");
    if (r < 1e-5) continue;
    Stencil stencil;
    stencil.step = std::max(1e-6, std::min(stencil.step, 0.02 * r));
    const Real c = quad.weights[i] * std::pow(r, m) *
                   volume_density(params, p, stencil) / pi_power;
    const Real root = std::sqrt(c);
    for (Eigen::Index a = 0; a < n_mon; ++a)
      scaled(i, a) = root * monomial_value(exponents[a], quad.points[i]);
  }
  const ComplexMatrix gram = scaled.adjoint() * scaled;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  const Real lo = solver.eigenvalues().minCoeff();
  const Real hi = solver.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw Error(errc::ill_conditioned,
                "Gram condition number above 1e12; raise the cutoff or quadrature");

  ComplexVector phi(n_mon);
  const ComplexVector stacked = v.stacked();
  for (Eigen::Index a = 0; a < n_mon; ++a)
    phi(a) = monomial_value(exponents[a], stacked);
  const ComplexVector projected = solver.eigenvectors().adjoint() * phi;
  const ComplexVector solved =
      solver.eigenvectors() *
      projected.cwiseQuotient(solver.eigenvalues().cast<Complex>());
  const Real quad_form = phi.dot(solved).real();
  return std::pow(rho(params, v), m) * quad_form;
}

Real rawnsley_oracle_radial(const HartogsParams& params, int m, const HartogsPoint& v,
                            int degree_cutoff) {
  if (params.base.rank != 1 || std::abs(params.mu - 1.0) > 1e-12)
    throw Error(errc::unsupported,
                "exact radial oracle needs a rank-1 base with mu = 1");
  const int n = params.base.dim + params.d0;
  if (!(m > n)) throw Error(errc::hypothesis_violation, "m must exceed d + d0");

  // M is the unit ball in C^n here; monomial norms reduce to 1-D radial
  // integrals with polynomial integrands, integrated exactly.
  const SampleSet rule = radial_rule(params.base, degree_cutoff + m);
  const auto exponents = monomial_exponents(n, degree_cutoff);
  const ComplexVector stacked = v.stacked();
  const Real r = rho(params, v);
  if (r <= 0.0) throw Error(errc::outside_domain, "point outside M");

  std::vector<Real> radial_moment(n + degree_cutoff + 1, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Real t = rule.points[i](0).real();
    const Real base = rule.weights[i] * std::pow(1.0 - t, m - n - 1);
    Real t_pow = std::pow(t, n - 1);
    for (int k = 0; k <= degree_cutoff; ++k) {
      radial_moment[n - 1 + k] += base * t_pow;
      t_pow *= t;
    }
  }

  Real norm_min = std::numeric_limits<Real>::infinity();
  Real norm_max = 0.0, sum = 0.0;
  for (const auto& alpha : exponents) {
    int total = 0;
    Real alpha_fact = 1.0;
    Real point_term = 1.0;
    for (int i = 0; i < n; ++i) {
      total += alpha[i];
      alpha_fact *= factorial(alpha[i]);
      point_term *= std::pow(std::norm(stacked(i)), alpha[i]);
    }
    const Real norm = alpha_fact / factorial(n - 1 + total) * radial_moment[n - 1 + total];
    norm_min = std::min(norm_min, norm);
    norm_max = std::max(norm_max, norm);
    sum += point_term / norm;
  }
  if (!(norm_min > 0.0) || norm_max / norm_min > 1e12)
    throw Error(errc::ill_conditioned, "radial Gram condition number above 1e12");
  return std::pow(r, m) * sum;
}

}  // namespace ch
