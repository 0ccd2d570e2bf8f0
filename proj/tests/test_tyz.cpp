#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ch/errors.hpp"
#include "ch/gamma.hpp"
#include "ch/tyz.hpp"

using namespace ch;

namespace {

HartogsPoint make_point(const HartogsParams& params, std::initializer_list<Complex> zs,
                        std::initializer_list<Complex> ws) {
  HartogsPoint v;
  v.z = ComplexVector::Zero(params.base.dim);
  Eigen::Index i = 0;
  for (Complex c : zs) v.z(i++) = c;
  v.w = ComplexVector::Zero(params.d0);
  i = 0;
  for (Complex c : ws) v.w(i++) = c;
  return v;
}

}  // namespace

TEST_CASE("gamma_ratio: integer differences, identity, and poles") {
  CHECK(gamma_ratio(5.0, 3.0) == doctest::Approx(12.0));         // 4!/2!
  CHECK(gamma_ratio(2.5, 2.5) == doctest::Approx(1.0));
  CHECK(gamma_ratio(3.5, 2.5) == doctest::Approx(2.5));          // Gamma(z+1) = z Gamma(z)
  CHECK(gamma_ratio(0.5, -0.5) == doctest::Approx(-0.5));        // rising path through 0
  CHECK(gamma_ratio(-0.5, 0.5) == doctest::Approx(-2.0));        // reflection sign
  CHECK(gamma_ratio(4.0, -1.0) == doctest::Approx(0.0));         // pole below cancels
  CHECK(gamma_ratio(1.0, 0.0) == doctest::Approx(0.0));          // rising of length 1 at 0
  CHECK_THROWS_AS(gamma_ratio(-2.0, 1.5), Error);                // un-cancelled pole
}

TEST_CASE("x_tilde reduces to Gamma(mu s)/Gamma(mu s - d) on rank-1 bases") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  for (Real mu : {0.5, 1.0, 2.0}) {
    for (Real s : {0.0, 1.0, 2.5, 4.0}) {
      CHECK(x_tilde(disk, mu, s) == doctest::Approx(mu * s - 1.0).epsilon(1e-12));
    }
  }
  // Ball in C^3: Gamma(mu s)/Gamma(mu s - 3) = (mu s - 1)(mu s - 2)(mu s - 3).
  const DomainSpec ball3 = make_domain(DomainKind::type_I(1, 3));
  for (Real s : {1.0, 2.0, 3.7}) {
    const Real x = 1.5 * s;
    CHECK(x_tilde(ball3, 1.5, s) ==
          doctest::Approx((x - 1) * (x - 2) * (x - 3)).epsilon(1e-12));
  }
}

TEST_CASE("x_tilde frozen values for typeI:2,2 at mu = 1") {
  // Product reduces to (s-1)(s-2)^2(s-3).
  const DomainSpec spec = make_domain(DomainKind::type_I(2, 2));
  const Real expected[] = {12.0, 0.0, 0.0, 0.0, 12.0};  // s = 4, 3, 2, 1, 0
  for (int s = 4; s >= 0; --s)
    CHECK(x_tilde(spec, 1.0, s) == doctest::Approx(expected[4 - s]));
}

TEST_CASE("forward differences: frozen disk values and the recursion identity") {
  const DomainSpec disk = make_domain(DomainKind::type_I(1, 1));
  CHECK(dk_x_tilde(disk, 1.0, 1, 0) == doctest::Approx(0.0));
  CHECK(dk_x_tilde(disk, 1.0, 1, 1) == doctest::Approx(1.0));
  for (Real mu : {0.7, 1.0, 2.3})
    CHECK(dk_x_tilde(disk, mu, 1, 1) == doctest::Approx(mu).epsilon(1e-12));

  // D^k X(d) = D^{k-1} X(d) - D^{k-1} X(d-1) on every catalog domain.
  for (const char* name : {"typeI:2,2", "typeII:2", "typeIV:3"}) {
    const DomainSpec spec = make_domain(parse_kind(name));
    for (Real mu : {0.5, 1.0, 2.0}) {
      for (int k = 1; k <= spec.dim; ++k) {
        const Real direct = dk_x_tilde(spec, mu, spec.dim, k);
        const Real recursed = dk_x_tilde(spec, mu, spec.dim, k - 1) -
                              dk_x_tilde(spec, mu, spec.dim - 1, k - 1);
        CHECK(direct == doctest::Approx(recursed).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distortion on the disk bundle: (m-1)(m-2), independent of the point") {
  const HartogsParams params =
      make_hartogs(make_domain(DomainKind::type_I(1, 1)), 1.0, 1);
  const HartogsPoint center = make_point(params, {0.0}, {0.0});
  CHECK(kempf_distortion(params, 5, center) == doctest::Approx(12.0));
  CHECK(kempf_distortion(params, 10, center) == doctest::Approx(72.0));

  const HartogsPoint off = make_point(params, {Complex(0.4, 0.2)}, {Complex(0.1, 0.3)});
  CHECK(kempf_distortion(params, 5, off) == doctest::Approx(12.0).epsilon(1e-14));

  CHECK_THROWS_AS(kempf_distortion(params, 2, center), Error);  // m below threshold
}

TEST_CASE("frozen values: ball C^2 and typeIV:3 bundles") {
  // Ball base: T_m = (m-1)(m-2)(m-3).
  const HartogsParams ball =
      make_hartogs(make_domain(DomainKind::type_I(1, 2)), 1.0, 1);
  const HartogsPoint v = make_point(ball, {Complex(0.2, 0.1), 0.3}, {0.2});
  CHECK(kempf_distortion(ball, 5, v) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(kempf_distortion(ball, 7, v) == doctest::Approx(120.0).epsilon(1e-13));

  // typeIV:3 at the center with w = 0: Xtilde = (s-1)(s-2)(s-1.5) gives 42.
  const HartogsParams lie =
      make_hartogs(make_domain(DomainKind::type_IV(3)), 1.0, 1);
  const HartogsPoint center = make_point(lie, {0.0, 0.0, 0.0}, {0.0});
  CHECK(kempf_distortion(lie, 5, center) == doctest::Approx(42.0).epsilon(1e-13));
}

TEST_CASE("distortion depends on w only through its norm") {
  const HartogsParams params =
      make_hartogs(make_domain(DomainKind::type_IV(3)), 1.4, 1);
  HartogsPoint v = make_point(params, {Complex(0.2, 0.1), 0.1, 0.0}, {Complex(0.3, 0.2)});
  const Real reference = kempf_distortion(params, 7, v);
  for (Real angle : {0.5, 1.7, 3.1}) {
    HartogsPoint rotated = v;
    rotated.w(0) *= Complex(std::cos(angle), std::sin(angle));
    CHECK(kempf_distortion(params, 7, rotated) == doctest::Approx(reference).epsilon(1e-15));
  }
}

TEST_CASE("homogeneity at mu = 1 over rank-1 bases: exactly constant") {
  for (int dprime : {1, 2}) {
    const HartogsParams params =
        make_hartogs(make_domain(DomainKind::type_I(1, dprime)), 1.0, 1);
    const SampleSet set = sample_hartogs_interior(params, 100, 91);
    const int m = params.base.dim + 3;
    Real lo = std::numeric_limits<Real>::infinity(), hi = 0.0;
    for (const ComplexVector& s : set.points) {
      const Real t = kempf_distortion(params, m, split_point(params, s));
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    CHECK(hi - lo == 0.0);  // the x-dependent coefficients vanish identically
  }
}

TEST_CASE("coefficient extraction: disk (1,-3,2) and ball (1,-6,11,-6)") {
  const HartogsParams disk =
      make_hartogs(make_domain(DomainKind::type_I(1, 1)), 1.0, 1);
  const HartogsPoint v = make_point(disk, {Complex(0.1, 0.2)}, {0.25});
  const DistortionReport report =
      tyz_coefficients(disk, v, default_m_grid(disk), default_check_grid(disk));
  REQUIRE(report.coefficients.size() == 3);
  CHECK(report.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.coefficients[1] == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(report.coefficients[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.interpolation_residual < 1e-10);

  const HartogsParams ball =
      make_hartogs(make_domain(DomainKind::type_I(1, 2)), 1.0, 1);
  const HartogsPoint u = make_point(ball, {0.2, 0.1}, {0.3});
  const DistortionReport r2 =
      tyz_coefficients(ball, u, default_m_grid(ball), default_check_grid(ball));
  const Real expected[] = {1.0, -6.0, 11.0, -6.0};
  for (int j = 0; j < 4; ++j)
    CHECK(r2.coefficients[j] == doctest::Approx(expected[j]).epsilon(1e-11));

  CHECK_THROWS_AS(tyz_coefficients(disk, v, {5, 5, 6}, {9}), Error);  // duplicates
}

TEST_CASE("finiteness and a0 = 1 across the catalog slice") {
  for (const char* name : {"typeI:1,1", "typeI:1,2", "typeI:2,2", "typeII:2", "typeIV:3"}) {
    for (Real mu : {0.5, 1.0, 2.0}) {
      for (int d0 : {1, 2}) {
        const HartogsParams params = make_hartogs(make_domain(parse_kind(name)), mu, d0);
        HartogsPoint v;
        v.z = ComplexVector::Zero(params.base.dim);
        v.z(0) = Complex(0.15, 0.1);
        v.w = ComplexVector::Zero(d0);
        v.w(0) = 0.2;
        const DistortionReport report = tyz_coefficients(
            params, v, default_m_grid(params), default_check_grid(params));
        CAPTURE(name);
        CAPTURE(mu);
        CAPTURE(d0);
        CHECK(report.interpolation_residual < 1e-8);
        CHECK(std::abs(report.coefficients[0] - 1.0) < 1e-8);
      }
    }
  }
}

TEST_CASE("radial oracle reproduces the closed form on the disk bundle") {
  const HartogsParams params =
      make_hartogs(make_domain(DomainKind::type_I(1, 1)), 1.0, 1);
  const HartogsPoint center = make_point(params, {0.0}, {0.0});
  const HartogsPoint off = make_point(params, {Complex(0.3, 0.2)}, {Complex(0.0, 0.4)});
  for (int m : {5, 6, 8}) {
    const Real exact = (m - 1.0) * (m - 2.0);
    CHECK(std::abs(rawnsley_oracle_radial(params, m, center, 20) / exact - 1.0) < 1e-2);
    CHECK(std::abs(rawnsley_oracle_radial(params, m, off, 20) / exact - 1.0) < 1e-2);
  }
}

TEST_CASE("oracle truncation settles: cutoff 10 -> 20 moves the value < 1e-3") {
  const HartogsParams params =
      make_hartogs(make_domain(DomainKind::type_I(1, 1)), 1.0, 1);
  const HartogsPoint v = make_point(params, {Complex(0.3, 0.0)}, {Complex(0.0, 0.4)});
  REQUIRE(rho(params, v) > 0.3);
  const Real at10 = rawnsley_oracle_radial(params, 5, v, 10);
  const Real at20 = rawnsley_oracle_radial(params, 5, v, 20);
  CHECK(std::abs(at20 / at10 - 1.0) < 1e-3);
}

TEST_CASE("Monte Carlo oracle agrees with the closed form on the disk bundle") {
  const HartogsParams params =
      make_hartogs(make_domain(DomainKind::type_I(1, 1)), 1.0, 1);
  const SampleSet quad = sample_hartogs_interior(params, 20000, 77);
  const HartogsPoint v = make_point(params, {Complex(0.2, -0.1)}, {0.3});
  const Real oracle = rawnsley_oracle(params, 5, v, 12, quad);
  CHECK(std::abs(oracle / 12.0 - 1.0) < 0.05);
}

TEST_CASE("monomial enumeration is lexicographic and duplicate-free") {
  const auto exps = monomial_exponents(2, 3);
  CHECK(exps.size() == 10);  // C(3+2, 2)
  for (std::size_t i = 1; i < exps.size(); ++i) CHECK(exps[i - 1] < exps[i]);
}
