#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ch/errors.hpp"
#include "ch/gamma.hpp"
#include "ch/hardy.hpp"
#include "ch/tyz.hpp"

using namespace ch;

namespace {

constexpr Real kPi = std::numbers::pi;

HartogsParams params_for(const char* kind, Real mu) {
  return make_hartogs(make_domain(parse_kind(kind)), mu, 1);
}

ComplexVector single(Complex value) {
  ComplexVector z(1);
  z(0) = value;
  return z;
}

HartogsPoint bundle_point(const HartogsParams& params, const ComplexVector& z,
                          Complex w) {
  HartogsPoint v;
  v.z = z;
  v.w = ComplexVector(1);
  v.w(0) = w;
  return v;
}

}  // namespace

TEST_CASE("binomial-basis fit matrix rows are C(m+l, l)") {
  CHECK(binomial(3 + 0, 0) == 1.0);
  CHECK(binomial(3 + 1, 1) == 4.0);
  CHECK(binomial(4 + 0, 0) == 1.0);
  CHECK(binomial(4 + 1, 1) == 5.0);
}

TEST_CASE("disk Gram norms: ||z^k||^2 = k! Gamma(m-1)/Gamma(m+k)") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  const MonomialBasis basis = make_monomial_basis(1, 12);
  const SampleSet rule = radial_rule(disk, 60);
  for (int m : {3, 5, 9}) {
    const GramFactor gram = base_gram(disk, 1.0, m, basis, rule);
    for (int k : {0, 1, 4, 9}) {
      // transform is diagonal 1/sqrt(norm) on the radial path
      const Real norm = 1.0 / std::norm(gram.transform(k, k));
      const Real exact = factorial(k) * gamma_ratio(m - 1.0, static_cast<Real>(m + k));
      CHECK(norm == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(base_gram(disk, 1.0, 1, basis, rule), Error);  // below margin
}

TEST_CASE("orthonormalization transform whitens the Monte Carlo Gram") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  const MonomialBasis basis = make_monomial_basis(1, 4);
  const SampleSet quad = sample_interior(disk, 20000, 17);
  const GramFactor gram = base_gram(disk, 1.0, 5, basis, quad);

  // Rebuild the Gram from the same quadrature and whiten it.
  const Eigen::Index n = static_cast<Eigen::Index>(basis.exponents.size());
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const Complex z = quad.points[i](0);
    const Real n_z = 1.0 - std::norm(z);
    const Real density = std::pow(n_z, 5.0) / (n_z * n_z) / kPi;
    ComplexVector phi(n);
    for (Eigen::Index a = 0; a < n; ++a) phi(a) = std::pow(z, a);
    g += quad.weights[i] * density * phi * phi.adjoint();
  }
  const ComplexMatrix identity = gram.transform * g * gram.transform.adjoint();
  CHECK((identity - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("epsilon_base on the disk collapses to m - 1") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  const MonomialBasis basis = make_monomial_basis(1, 40);
  const SampleSet rule = radial_rule(disk, 100);
  for (int m : {3, 6, 11}) {
    const GramFactor gram = base_gram(disk, 1.0, m, basis, rule);
    for (Complex z : {Complex(0.0, 0.0), Complex(0.5, -0.3), Complex(0.0, 0.7)}) {
      CHECK(std::abs(epsilon_base(disk, 1.0, m, single(z), gram) - (m - 1.0)) < 1e-6);
    }
    // z = 0 keeps only the constant term 1/||1||^2.
    CHECK(epsilon_base(disk, 1.0, m, single(0.0), gram) ==
          doctest::Approx(1.0 / (1.0 / (m - 1.0))).epsilon(1e-12));
  }
}

TEST_CASE("epsilon_base via Monte Carlo Gram agrees with the radial route") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  const MonomialBasis basis = make_monomial_basis(1, 10);
  const SampleSet quad = sample_interior(disk, 40000, 29);
  const GramFactor gram = base_gram(disk, 1.0, 5, basis, quad);
  const Real eps = epsilon_base(disk, 1.0, 5, single(Complex(0.3, 0.2)), gram);
  CHECK(eps == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("epsilon_base is z-independent on the ball and polynomial in m") {
  const DomainSpec ball = make_domain(DomainKind::type_I(1, 2));
  const MonomialBasis basis = make_monomial_basis(2, 30);
  const SampleSet rule = radial_rule(ball, 110);
  std::vector<ComplexVector> zs;
  {
    ComplexVector z(2);
    z << Complex(0.0, 0.0), Complex(0.0, 0.0);
    zs.push_back(z);
    z << Complex(0.4, 0.1), Complex(-0.2, 0.3);
    zs.push_back(z);
    z << Complex(0.0, 0.5), Complex(0.3, 0.0);
    zs.push_back(z);
  }
  for (int m : {4, 6}) {
    const GramFactor gram = base_gram(ball, 1.0, m, basis, rule);
    const Real expected = (m - 1.0) * (m - 2.0);  // mu^{-d} Gamma(m)/Gamma(m-d)
    for (const ComplexVector& z : zs)
      CHECK(std::abs(epsilon_base(ball, 1.0, m, z, gram) - expected) < 1e-5 * expected);
  }

  // Held-out polynomial prediction: epsilon is degree-d in m.
  const std::vector<int> nodes = {4, 5, 6};
  Matrix system(3, 3);
  Vector values(3);
  for (int i = 0; i < 3; ++i) {
    const GramFactor gram = base_gram(ball, 1.0, nodes[i], basis, rule);
    values(i) = epsilon_base(ball, 1.0, nodes[i], zs[1], gram);
    for (int l = 0; l < 3; ++l) system(i, l) = binomial(nodes[i] + l, l);
  }
  const Vector b = system.colPivHouseholderQr().solve(values);
  const GramFactor gram8 = base_gram(ball, 1.0, 8, basis, rule);
  const Real held_out = epsilon_base(ball, 1.0, 8, zs[1], gram8);
  Real predicted = 0.0;
  for (int l = 0; l < 3; ++l) predicted += b(l) * binomial(8 + l, l);
  CHECK(std::abs(predicted - held_out) / held_out < 1e-5);
}

TEST_CASE("b_l frozen values across mu for disk and ball bases") {
  struct Case {
    const char* kind;
    Real mu;
    std::vector<Real> expected;
  };
  const Case cases[] = {
      {"typeI:1,1", 1.0, {-2.0, 1.0}},
      {"typeI:1,1", 2.0, {-1.5, 1.0}},
      {"typeI:1,1", 0.5, {-3.0, 1.0}},
      {"typeI:1,2", 1.0, {6.0, -6.0, 2.0}},
      {"typeI:1,2", 2.0, {6.0, -9.0, 4.0}},
      {"typeI:1,2", 0.5, {15.0, -9.0, 2.0}},
  };
  for (const Case& c : cases) {
    const HartogsParams params = params_for(c.kind, c.mu);
    const std::vector<Real> b = default_b_coefficients(params);
    CAPTURE(c.kind);
    CAPTURE(c.mu);
    REQUIRE(b.size() == c.expected.size());
    for (std::size_t l = 0; l < b.size(); ++l)
      CHECK(b[l] == doctest::Approx(c.expected[l]).epsilon(1e-6));
    CHECK(b.back() > 0.0);
  }
}

TEST_CASE("hat map: center values, modulus invariance, S^1 equivariance") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  auto one = [](const ComplexVector&) { return Complex(1.0, 0.0); };
  for (Real theta : {0.0, 0.8, 2.5}) {
    const Complex w(std::cos(theta), std::sin(theta));
    const HartogsPoint v = bundle_point(params_for("typeI:1,1", 1.0), single(0.0), w);
    const Complex expected =
        std::pow(2.0, -0.5) * Complex(std::cos(3 * theta), std::sin(3 * theta));
    const Complex got = hat_map_value(disk, 1.0, 3, one, v);
    CHECK(std::abs(got - expected) < 1e-12);
  }

  auto section = [](const ComplexVector& z) { return z(0) * z(0); };
  const HartogsParams params = params_for("typeI:1,1", 1.4);
  const ComplexVector z = single(Complex(0.3, 0.4));
  const Real radius = std::pow(generic_norm(disk, z), 0.7);
  const HartogsPoint v = bundle_point(params, z, radius * Complex(0.6, 0.8));
  const Complex base_value = hat_map_value(disk, 1.4, 4, section, v);
  for (Real angle : {0.5, 1.9}) {
    const Complex lambda(std::cos(angle), std::sin(angle));
    HartogsPoint rotated = v;
    rotated.w(0) *= lambda;
    const Complex rotated_value = hat_map_value(disk, 1.4, 4, section, rotated);
    CHECK(std::abs(std::abs(rotated_value) - std::abs(base_value)) < 1e-12);
    CHECK(std::abs(rotated_value - std::pow(lambda, 4) * base_value) < 1e-12);
  }

  const HartogsPoint inside = bundle_point(params, single(0.0), Complex(0.5, 0.0));
  CHECK_THROWS_AS(hat_map_value(disk, 1.4, 3, one, inside), Error);
}

TEST_CASE("isometry ratios sit at 1 for disk monomials") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  const HartogsParams params = params_for("typeI:1,1", 1.0);
  const auto boundary = sample_boundary(params, 20000, 5);
  const SampleSet base_quad = sample_interior(disk, 20000, 6);
  for (int m : {3, 4}) {
    for (int k : {0, 1, 2}) {
      auto section = [k](const ComplexVector& z) { return std::pow(z(0), k); };
      const Real ratio = isometry_ratio(disk, 1.0, m, section, boundary, base_quad);
      CAPTURE(m);
      CAPTURE(k);
      CHECK(std::abs(ratio - 1.0) < 0.02);
    }
  }
}

TEST_CASE("boundary lifts with different weights are orthogonal (3 sigma)") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  const HartogsParams params = params_for("typeI:1,1", 1.0);
  const auto boundary = sample_boundary(params, 50000, 41);
  auto one = [](const ComplexVector&) { return Complex(1.0, 0.0); };

  std::vector<Complex> terms(boundary.size());
  std::vector<Real> weights(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const HartogsPoint v = boundary_point(params, boundary[i]);
    const Complex a = hat_map_value(disk, 1.0, 3, one, v);
    const Complex b = hat_map_value(disk, 1.0, 5, one, v);
    terms[i] = boundary[i].weight * a * std::conj(b);
    weights[i] = boundary[i].weight;
  }
  const Complex inner = pairwise_sum(terms) / (2.0 * kPi * kPi);
  const Real total_weight = pairwise_sum(weights);
  const Complex mean = pairwise_sum(terms) / total_weight;
  Real var = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i)
    var += std::norm(terms[i] - weights[i] * mean);
  const Real stderr_est =
      std::sqrt(var * terms.size() / (terms.size() - 1.0)) / (2.0 * kPi * kPi);
  CHECK(std::abs(inner) < 3.0 * stderr_est);
}

TEST_CASE("Szego closed form: frozen disk values") {
  const HartogsParams params = params_for("typeI:1,1", 1.0);
  const std::vector<Real> b = {-2.0, 1.0};
  CHECK(szego_closed(params, b, bundle_point(params, single(0.0), 0.0)) ==
        doctest::Approx(-0.5));
  for (Real t : {0.36, 0.64, 0.81}) {
    const Real expected = 0.5 * (2 * t - 1) / ((1 - t) * (1 - t));
    CHECK(szego_closed(params, b,
                       bundle_point(params, single(0.0), std::sqrt(t))) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("series and closed form agree in the bulk") {
  struct Case {
    const char* kind;
    Real mu;
  };
  for (const Case& c : {Case{"typeI:1,1", 1.0}, Case{"typeI:1,1", 2.0},
                        Case{"typeI:1,2", 1.0}, Case{"typeI:1,2", 2.0}}) {
    const HartogsParams params = params_for(c.kind, c.mu);
    const std::vector<Real> b = default_b_coefficients(params);
    ComplexVector z = ComplexVector::Zero(params.base.dim);
    z(0) = Complex(0.25, 0.15);
    const Real n_mu = std::pow(generic_norm(params.base, z), c.mu);
    for (Real x : {0.0, 0.25, 0.6, 0.8}) {
      const HartogsPoint v = bundle_point(params, z, std::sqrt(x * n_mu));
      const SzegoEvaluation eval = szego_series(params, b, v, 900, 40);
      CAPTURE(c.kind);
      CAPTURE(c.mu);
      CAPTURE(x);
      CHECK(std::abs(eval.series_value - eval.closed_value) /
                std::abs(eval.closed_value) <
            1e-6);
      CHECK(eval.tail_estimate <= 1e-8 * std::abs(eval.series_value));
    }
  }
}

TEST_CASE("series at w = 0 equals the prefactored b_l sum") {
  const HartogsParams params = params_for("typeI:1,2", 1.0);
  const std::vector<Real> b = default_b_coefficients(params);
  ComplexVector z = ComplexVector::Zero(2);
  z(0) = Complex(0.2, -0.3);
  const HartogsPoint v = bundle_point(params, z, 0.0);
  const SzegoEvaluation eval = szego_series(params, b, v, 50, 30);
  const Real n_mu = generic_norm(params.base, z);
  const Real expected = std::pow(2.0, -2) * std::pow(n_mu, -3) * (b[0] + b[1] + b[2]);
  CHECK(eval.series_value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("tail estimate decays by roughly the geometric ratio") {
  const HartogsParams params = params_for("typeI:1,1", 1.0);
  const std::vector<Real> b = {-2.0, 1.0};
  const Real x = 0.5;
  const HartogsPoint v = bundle_point(params, single(0.0), std::sqrt(x));
  const SzegoEvaluation e60 = szego_series(params, b, v, 60, 20);
  const SzegoEvaluation e61 = szego_series(params, b, v, 61, 20);
  const Real ratio = e61.tail_estimate / e60.tail_estimate;
  CHECK(ratio > 0.8 * x);
  CHECK(ratio < 1.2 * x);
}

TEST_CASE("series refuses points whose tail cannot meet the bound") {
  const HartogsParams params = params_for("typeI:1,1", 1.0);
  const std::vector<Real> b = {-2.0, 1.0};
  const HartogsPoint v = bundle_point(params, single(0.0), std::sqrt(0.9));
  CHECK_THROWS_AS(szego_series(params, b, v, 40, 20), Error);
}

TEST_CASE("log-term detector recovers a planted logarithm") {
  std::vector<Real> t, s;
  for (int i = 0; i < 16; ++i) {
    const Real value = std::pow(10.0, -3.0 + 2.0 * i / 15.0);
    t.push_back(value);
    s.push_back(std::pow(value, -2.0) + 0.1 * std::log(value));
  }
  const LogTermFit fit = fit_radial_profile(t, s, 2);
  CHECK(std::abs(fit.b_estimate - 0.1) < 1e-6);
  CHECK(std::abs(fit.a_estimate - 1.0) < 1e-6);
}

TEST_CASE("log-term vanishes along disk and ball radial families") {
  for (const char* kind : {"typeI:1,1", "typeI:1,2"}) {
    for (Real mu : {1.0, 2.0}) {
      const HartogsParams params = params_for(kind, mu);
      ComplexVector z = ComplexVector::Zero(params.base.dim);
      z(0) = Complex(0.3, -0.1);
      const std::vector<Real> grid = default_radial_grid(params, z);
      const LogTermFit fit = log_term_fit(params, z, grid);
      const Real t_min = grid.front();
      const Real scale =
          std::abs(fit.a_estimate) * std::pow(t_min, -(params.base.dim + 1));
      CAPTURE(kind);
      CAPTURE(mu);
      CHECK(std::abs(fit.b_estimate) < 1e-8 * scale);
      CHECK(fit.residual < 1e-10);
    }
  }
}

TEST_CASE("a_estimate approaches 2^{-d} b_d as the grid shrinks") {
  const HartogsParams params = params_for("typeI:1,2", 1.0);
  const std::vector<Real> b = default_b_coefficients(params);
  ComplexVector z = ComplexVector::Zero(2);
  z(0) = 0.25;
  const Real n_mu = generic_norm(params.base, z);
  std::vector<Real> grid;
  for (int i = 0; i < 12; ++i)
    grid.push_back(n_mu * std::pow(10.0, -6.0 + 2.0 * i / 11.0));
  const LogTermFit fit = log_term_fit(params, b, z, grid);
  CHECK(fit.a_estimate == doctest::Approx(0.25 * b[2]).epsilon(1e-4));
}

TEST_CASE("grid validation: too few nodes and sub-decade spans are rejected") {
  const HartogsParams params = params_for("typeI:1,1", 1.0);
  const std::vector<Real> b = {-2.0, 1.0};
  CHECK_THROWS_AS(log_term_fit(params, b, single(0.0), {0.01, 0.02, 0.03}), Error);
  CHECK_THROWS_AS(
      log_term_fit(params, b, single(0.0), {0.01, 0.012, 0.014, 0.016, 0.018, 0.02}),
      Error);
}
